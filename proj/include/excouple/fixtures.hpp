#pragma once

#include "excouple/tower.hpp"

#include <random>

namespace excouple::fixtures {

/// Cellular S^1: 0-cell at filtration level 1, 1-cell entering at level 0.
FilteredComplex circle();

/// Skeletal S^2 (one 0-cell, one 2-cell), layered top-down: the 0-cell sits
/// at level 2, the 2-cell at level 0.
FilteredComplex sphere2();

/// All levels of `fc` collapsed to a single value (one filtration jump).
FilteredComplex uniform_level(FilteredComplex fc, long level);

/// Two generators a (degree 1, level 0) and b (degree 0, level 2) with
/// da = b: the smallest complex whose spectral sequence has a nonzero d_2.
FilteredComplex d2_jump();

/// Tower models for the non-descending product counterexample. W carries
/// e_k (level 0) -> e_{k-1} (level 1); X the same in degrees l, l-1; Y has
/// g_{k+l-1} (level 1) -> g_{k+l-2} (level 2).
FilteredComplex counterexample_w(int k);
FilteredComplex counterexample_x(int l);
FilteredComplex counterexample_y(int k, int l);

/// Random bounded filtered complex: degree range <= 5, filtration width
/// <= 4, boundary entries in [-3,3]. Built as a direct sum of elementary
/// pieces (a lone generator, or a -> m*b) twisted by filtration-respecting
/// unimodular basis changes, so d o d = 0 and the subcomplex condition hold
/// by construction and every associated-graded extension splits.
FilteredComplex random_filtered_complex(std::mt19937& rng);

}  // namespace excouple::fixtures
