#include "excouple/fixtures.hpp"

namespace excouple::fixtures {

FilteredComplex circle() {
    FilteredComplex fc;
    fc.levels[0] = {1};
    fc.levels[1] = {0};
    fc.boundary[1] = IntMat(1, 1);  // da = 0 (both endpoints are the 0-cell)
    return fc;
}

FilteredComplex sphere2() {
    FilteredComplex fc;
    fc.levels[0] = {2};
    fc.levels[2] = {0};
    return fc;
}

FilteredComplex uniform_level(FilteredComplex fc, long level) {
    for (auto& [n, ls] : fc.levels)
        for (auto& l : ls) l = level;
    return fc;
}

FilteredComplex d2_jump() {
    FilteredComplex fc;
    fc.levels[0] = {2};
    fc.levels[1] = {0};
    fc.boundary[1] = IntMat{{1}};
    return fc;
}

namespace {

FilteredComplex two_cell(long top_degree, long top_level, long bottom_level) {
    FilteredComplex fc;
    fc.levels[top_degree] = {top_level};
    fc.levels[top_degree - 1] = {bottom_level};
    fc.boundary[top_degree] = IntMat{{1}};
    return fc;
}

}  // namespace

FilteredComplex counterexample_w(int k) {
    return two_cell(k, 0, 1);
}

FilteredComplex counterexample_x(int l) {
    return two_cell(l, 0, 1);
}

FilteredComplex counterexample_y(int k, int l) {
    return two_cell(k + l - 1, 1, 2);
}

FilteredComplex random_filtered_complex(std::mt19937& rng) {
    std::uniform_int_distribution<long> span_d(1, 5), width_d(1, 4), pieces_d(1, 6);
    const long span = span_d(rng), width = width_d(rng);
    std::uniform_int_distribution<long> level_d(0, width - 1), deg_d(0, span);
    std::uniform_int_distribution<int> kind_d(0, 2), coef_d(-3, 3);

    FilteredComplex fc;
    for (long n = 0; n <= span; ++n) fc.levels[n] = {};
    auto add_gen = [&](long n, long level) {
        fc.levels[n].push_back(level);
        return fc.levels[n].size() - 1;
    };

    const long npieces = pieces_d(rng);
    struct Pair {
        long n;
        std::size_t a, b;
        Int m;
    };
    std::vector<Pair> pairs;
    for (long t = 0; t < npieces; ++t) {
        if (kind_d(rng) == 0) {
            add_gen(deg_d(rng), level_d(rng));
        } else {
            long n = std::uniform_int_distribution<long>(1, span)(rng);
            long la = level_d(rng);
            long lb = std::uniform_int_distribution<long>(la, width - 1)(rng);
            pairs.push_back({n, add_gen(n, la), add_gen(n - 1, lb), coef_d(rng)});
        }
    }
    for (long n = 1; n <= span; ++n) fc.boundary[n] = IntMat(fc.rank(n - 1), fc.rank(n));
    for (const auto& p : pairs) fc.boundary[p.n](p.b, p.a) = p.m;

    // filtration-respecting basis changes: e_dst <- e_dst + c*e_src needs
    // level(src) >= level(dst); reverted when an entry leaves [-3,3]
    std::uniform_int_distribution<int> ops_d(0, 10), c_d(-2, 2);
    const int ops = ops_d(rng);
    for (int t = 0; t < ops; ++t) {
        long n = deg_d(rng);
        const auto& ls = fc.levels[n];
        if (ls.size() < 2) continue;
        std::uniform_int_distribution<std::size_t> pick(0, ls.size() - 1);
        std::size_t dst = pick(rng), src = pick(rng);
        Int c = c_d(rng);
        if (dst == src || ls[src] < ls[dst] || c == 0) continue;
        FilteredComplex backup = fc;
        if (fc.rank(n - 1)) fc.boundary[n].add_col_multiple(dst, src, c);
        if (fc.rank(n + 1)) fc.boundary[n + 1].add_row_multiple(src, dst, -c);
        bool ok = true;
        for (long m : {n, n + 1})
            if (fc.boundary.count(m))
                for (std::size_t i = 0; i < fc.boundary[m].rows() && ok; ++i)
                    for (std::size_t j = 0; j < fc.boundary[m].cols() && ok; ++j)
                        if (fc.boundary[m](i, j) > 3 || fc.boundary[m](i, j) < -3) ok = false;
        if (!ok) fc = backup;
    }

    // drop empty degrees so rank/deg bookkeeping stays tight
    for (auto it = fc.levels.begin(); it != fc.levels.end();) {
        if (it->second.empty()) {
            fc.boundary.erase(it->first);
            fc.boundary.erase(it->first + 1);
            it = fc.levels.erase(it);
        } else {
            ++it;
        }
    }
    return fc;
}

}  // namespace excouple::fixtures
