#pragma once

#include "excouple/tower.hpp"

#include <string>
#include <utility>
#include <vector>

namespace excouple {

/// Formal oriented cell: a disk, a sphere, the cone on a sphere, or a
/// product. Orientation is an ordered coordinate frame; all boundary signs
/// are computed by collar-position bookkeeping in that frame (the outward
/// normal of a disk comes first, the cone coordinate last).
struct OrientedCell {
    enum class Kind { disk, sphere, cone, product };
    Kind kind = Kind::disk;
    int dim = 0;  // disk D^dim, sphere S^dim, cone CS^{dim-1} (of dimension dim)
    std::vector<OrientedCell> factors;  // for products (exactly two)

    static OrientedCell disk(int p);
    static OrientedCell sphere(int p);
    static OrientedCell cone(int p);  // CS^{p-1}
    static OrientedCell product(OrientedCell a, OrientedCell b);

    int dimension() const;
    std::string name() const;
    bool operator==(const OrientedCell&) const;
};

struct SignedCell {
    int sign = 1;
    OrientedCell cell;
};

/// Formal boundary with frame-computed signs:
///   d(D^p)  = + S^{p-1}            (outward normal first)
///   d(CS^{p-1}) = (-1)^{p-1} S^{p-1}   (cone coordinate last)
///   d(M x N) = dM x N  u  (-1)^{dim M} M x dN
/// Spheres are closed (empty boundary); dimension 0 is rejected.
std::vector<SignedCell> boundary_sign(const OrientedCell& cell);

/// The three degree-one terms of the product identity on E_1 classes, as
/// degree vectors: jk-product -> (1,1), kx-y -> (1,0), x-ky -> (0,(-1)^p),
/// tied together by (1,1) = (1,0) + (-1)^p (0,(-1)^p).
enum class DegreeTerm { jk_product, kx_y, x_ky };
std::pair<long, long> degree_vector(DegreeTerm term, long p, long q);

/// Named boundary/suspension conventions with their degree-dependent signs.
enum class SignConvention {
    kappa_cone,            // (-1)^{p-1}
    homotopy_boundary,     // (-1)^k
    homology_boundary,     // (-1)^k
    cohomology_boundary,   // (-1)^k
    left_suspension,       // -1
    right_suspension,      // +1
};
int convention_sign(SignConvention c, long k);
SignConvention convention_from_name(const std::string& name);  // throws invalid_input

/// The convention constants actually consumed by the engine, collected in
/// one place so each can be toggled independently (negative-control tests
/// flip one at a time and expect downstream checks to break).
struct SignTable {
    int koszul_base = -1;                // Leibniz: (-1)^p past a degree-p factor
    int kappa_cone_base = -1;            // raised to p-1
    int homotopy_boundary_base = -1;     // raised to k
    int homology_boundary_base = -1;     // raised to k
    int cohomology_boundary_base = -1;   // raised to k
    int left_suspension = -1;
    int right_suspension = +1;

    int koszul(long p) const { return pow_sign(koszul_base, p); }
    int kappa_cone(long p) const { return pow_sign(kappa_cone_base, p - 1); }
    int homotopy_boundary(long k) const { return pow_sign(homotopy_boundary_base, k); }
    int homology_boundary(long k) const { return pow_sign(homology_boundary_base, k); }
    int cohomology_boundary(long k) const { return pow_sign(cohomology_boundary_base, k); }

    static const SignTable& standard();
    static int pow_sign(int base, long e) { return (e % 2 + 2) % 2 ? base : 1; }
};

/// Checks the product identity D(j kappa(xy)) = D(kappa(x)y) + (-1)^p D(x kappa(y))
/// over 1 <= p,q <= bound, with the degree vectors built from the table.
bool degree_identity_holds(long bound = 8, const SignTable& t = SignTable::standard());

struct ShiftReport {
    bool pass = true;
    std::vector<std::string> failures;
};

/// Builds the left suspension (degrees +1, boundary negated) and the right
/// suspension (degrees +1, boundary unchanged) of `fc` and verifies the
/// page differentials transform by left_suspension / right_suspension
/// through all pages up to stabilization.
ShiftReport suspension_shift_check(const FilteredComplex& fc,
                                   const SignTable& t = SignTable::standard());

}  // namespace excouple
