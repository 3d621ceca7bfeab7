#include "excouple/document.hpp"

#include "json.hpp"

namespace excouple {

namespace {

using nlohmann::json;

IntMat parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array()) throw invalid_input(where + ": matrix must be an array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    if (rows) {
        if (!j[0].is_array()) throw invalid_input(where + ": matrix rows must be arrays");
        cols = j[0].size();
    }
    IntMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw invalid_input(where + ": ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_number_integer())
                throw invalid_input(where + ": matrix entries must be integers");
            m(r, c) = Int(j[r][c].get<long long>());
        }
    }
    return m;
}

long parse_long(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw invalid_input(where + ": expected an integer");
    return j.get<long>();
}

FilteredComplex parse_complex(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("degrees"))
        throw invalid_input(where + ": needs a \"degrees\" object");
    FilteredComplex fc;
    for (const auto& [key, val] : j.at("degrees").items()) {
        long n;
        try {
            n = std::stol(key);
        } catch (...) {
            throw invalid_input(where + ": degree key \"" + key + "\" is not an integer");
        }
        if (!val.is_array()) throw invalid_input(where + ": generator levels must be an array");
        std::vector<long> levels;
        for (const auto& l : val) levels.push_back(parse_long(l, where + ".degrees"));
        fc.levels[n] = std::move(levels);
    }
    if (j.contains("boundaries"))
        for (const auto& [key, val] : j.at("boundaries").items())
            fc.boundary[std::stol(key)] = parse_matrix(val, where + ".boundaries[" + key + "]");
    fc.check();
    return fc;
}

PresentedGroup parse_group(const json& j, const std::string& where) {
    const std::size_t n = j.at("generators").get<std::size_t>();
    IntMat rel(0, n);
    if (j.contains("relations") && !j.at("relations").empty()) {
        rel = parse_matrix(j.at("relations"), where + ".relations");
        if (rel.cols() != n) throw invalid_input(where + ": relation width != generators");
    }
    return PresentedGroup(n, rel);
}

AugmentedTowerData parse_tower(const json& j) {
    AugmentedTowerData data;
    data.d_floor = parse_long(j.at("d_floor"), "augmented_tower.d_floor");
    auto spots = [&](const char* field, BigradedFamily& fam) {
        if (!j.contains(field)) return;
        for (const auto& entry : j.at(field)) {
            Bidegree b{parse_long(entry.at("p"), field), parse_long(entry.at("q"), field)};
            fam.set(b, parse_group(entry, std::string("augmented_tower.") + field));
        }
    };
    spots("d", data.d);
    spots("e", data.e);

    auto group_of = [](const BigradedFamily& fam, Bidegree b) {
        return fam.has(b) ? fam.at(b) : PresentedGroup::trivial();
    };
    auto maps = [&](const char* field, std::map<Bidegree, GroupHom>& out, auto src, auto tgt) {
        if (!j.contains(field)) return;
        for (const auto& entry : j.at(field)) {
            Bidegree b{parse_long(entry.at("p"), field), parse_long(entry.at("q"), field)};
            IntMat m = parse_matrix(entry.at("matrix"), std::string("augmented_tower.") + field);
            out.emplace(b, GroupHom(src(b), tgt(b), m));
        }
    };
    // i: D^{p,q+1} -> D^{p,q}; j: D^{p,q} -> E^{p,q}; kappa: E^{p,q} -> D^{p-1,q+1}
    maps("i", data.i,
         [&](Bidegree b) { return group_of(data.d, {b.p, b.q + 1}); },
         [&](Bidegree b) { return group_of(data.d, b); });
    maps("j", data.j,
         [&](Bidegree b) { return group_of(data.d, b); },
         [&](Bidegree b) { return group_of(data.e, b); });
    maps("kappa", data.kappa,
         [&](Bidegree b) { return group_of(data.e, b); },
         [&](Bidegree b) { return group_of(data.d, {b.p - 1, b.q + 1}); });
    return data;
}

PairingBlock parse_pairing(const json& j) {
    PairingBlock pb;
    pb.w = parse_complex(j.at("w"), "pairing.w");
    pb.x = parse_complex(j.at("x"), "pairing.x");
    pb.y = parse_complex(j.at("y"), "pairing.y");
    if (j.contains("mu")) {
        std::map<std::pair<long, long>, std::vector<IntMat>> mu;
        for (const auto& entry : j.at("mu")) {
            const long a = parse_long(entry.at("a"), "pairing.mu.a");
            const long b = parse_long(entry.at("b"), "pairing.mu.b");
            std::vector<IntMat> T;
            for (const auto& slice : entry.at("tensor"))
                T.push_back(parse_matrix(slice, "pairing.mu.tensor"));
            mu[{a, b}] = std::move(T);
        }
        pb.chain_mu = std::move(mu);
    }
    if (j.contains("page1")) {
        PagePairing pp;
        pp.r = 1;
        for (const auto& entry : j.at("page1")) {
            const auto& l = entry.at("left");
            const auto& r = entry.at("right");
            if (!l.is_array() || l.size() != 2 || !r.is_array() || r.size() != 2)
                throw invalid_input("pairing.page1: left/right must be [p,q] pairs");
            Bidegree sl{parse_long(l[0], "page1"), parse_long(l[1], "page1")};
            Bidegree sr{parse_long(r[0], "page1"), parse_long(r[1], "page1")};
            std::vector<IntMat> T;
            for (const auto& slice : entry.at("tensor"))
                T.push_back(parse_matrix(slice, "pairing.page1.tensor"));
            pp.mu[{sl, sr}] = std::move(T);
        }
        pb.page1 = std::move(pp);
    }
    if (!pb.chain_mu && !pb.page1)
        throw invalid_input("pairing: needs a chain-level \"mu\" or a \"page1\" block");
    return pb;
}

}  // namespace

Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw invalid_input(std::string("document parse error: ") + e.what());
    }
    if (!j.is_object()) throw invalid_input("document: top level must be an object");

    Document doc;
    if (j.contains("format")) doc.format = static_cast<int>(parse_long(j.at("format"), "format"));
    if (doc.format != 1) throw invalid_input("document: unsupported format version");
    if (j.contains("filtered_complex"))
        doc.complex = parse_complex(j.at("filtered_complex"), "filtered_complex");
    if (j.contains("augmented_tower")) doc.tower = parse_tower(j.at("augmented_tower"));
    if (j.contains("pairing")) doc.pairing = parse_pairing(j.at("pairing"));
    if (j.contains("options")) {
        const auto& o = j.at("options");
        if (o.contains("indexing")) {
            const std::string conv = o.at("indexing").get<std::string>();
            if (conv == "colim")
                doc.options.indexing = IndexingConvention::colim_adams;
            else if (conv == "lim")
                doc.options.indexing = IndexingConvention::lim_adams;
            else
                throw invalid_input("options.indexing: expected \"colim\" or \"lim\"");
        }
        if (o.contains("max_page"))
            doc.options.max_page = static_cast<int>(parse_long(o.at("max_page"), "max_page"));
        if (o.contains("verbosity"))
            doc.options.verbosity = static_cast<int>(parse_long(o.at("verbosity"), "verbosity"));
    }
    return doc;
}

}  // namespace excouple
