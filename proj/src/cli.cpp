#include "excouple/cli.hpp"

#include "excouple/convergence.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace excouple {

namespace {

using nlohmann::json;

int env_page_cap() {
    const char* v = std::getenv("EXCOUPLE_MAX_PAGE");
    if (!v) return 64;
    const int n = std::atoi(v);
    return n > 0 ? n : 64;
}

json matrix_json(const IntMat& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c).convert_to<long long>());
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string matrix_text(const IntMat& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r ? "," : "") << "[";
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
        os << "]";
    }
    os << "]";
    return os.str();
}

/// Lexicographic (q, p) presentation order for deterministic reports.
template <typename M>
std::vector<Bidegree> sorted_spots(const M& m) {
    std::vector<Bidegree> out;
    for (const auto& [b, v] : m) out.push_back(b);
    std::sort(out.begin(), out.end(), [](Bidegree a, Bidegree b) {
        return a.q != b.q ? a.q < b.q : a.p < b.p;
    });
    return out;
}

ExactCouple couple_of(const Document& doc, const char* cmd) {
    ExactCouple c;
    if (doc.complex)
        c = from_filtered_complex(*doc.complex).couple;
    else if (doc.tower)
        c = from_augmented_tower(*doc.tower);
    else
        throw invalid_input(std::string(cmd) +
                            ": document needs a filtered_complex or augmented_tower block");
    if (doc.options.indexing == IndexingConvention::lim_adams)
        c = reindex(c, IndexingConvention::colim_adams, IndexingConvention::lim_adams);
    return c;
}

}  // namespace

std::string render_group(const PresentedGroup& g) {
    GroupInvariants inv = invariants(g);
    if (inv.rank == 0 && inv.torsion.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t t = 0; t < inv.rank; ++t, first = false) os << (first ? "" : " ⊕ ") << "Z";
    for (const Int& d : inv.torsion) {
        os << (first ? "" : " ⊕ ") << "Z/" << d;
        first = false;
    }
    return os.str();
}

std::string render_element(const PresentedGroup& g, const IntVec& coords) {
    IntVec v = g.reduce(coords);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        Int c = v[i];
        if (first) {
            if (c < 0) os << "-", c = -c;
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        if (c != 1) os << c << "·";
        os << "e";
        if (v.size() > 1) os << i;
        first = false;
    }
    return first ? "0" : os.str();
}

CliResult cmd_pages(const Document& doc, int max_r, const std::string& format) {
    ExactCouple c = couple_of(doc, "pages");
    int rmax = max_r > 0 ? max_r : doc.options.max_page;
    if (rmax <= 0) rmax = re_infinity_check(c).max_n;
    rmax = std::min(rmax, env_page_cap());

    std::ostringstream text;
    json out;
    out["pages"] = json::array();
    for (int r = 1; r <= rmax; ++r) {
        Page pg = page(c, r);
        json jp;
        jp["r"] = r;
        jp["entries"] = json::array();
        jp["differentials"] = json::array();
        text << "page " << r << "\n";
        auto spots = sorted_spots(pg.entries);
        if (spots.empty()) text << "  (no entries)\n";
        for (Bidegree b : spots) {
            const std::string grp = render_group(pg.entries.at(b).group());
            text << "  E[p=" << b.p << ",q=" << b.q << "] = " << grp << "\n";
            jp["entries"].push_back({{"p", b.p}, {"q", b.q}, {"group", grp}});
        }
        for (Bidegree b : spots) {
            const IntMat& d = pg.differentials.at(b).matrix();
            if (d.is_zero()) continue;
            text << "  d[(" << b.p << "," << b.q << ") -> (" << b.p - 1 << "," << b.q + r
                 << ")] = " << matrix_text(d) << "\n";
            jp["differentials"].push_back({{"from", {b.p, b.q}},
                                           {"to", {b.p - 1, b.q + r}},
                                           {"matrix", matrix_json(d)}});
        }
        out["pages"].push_back(std::move(jp));
    }
    return {0, format == "json" ? out.dump(2) + "\n" : text.str()};
}

CliResult cmd_converge(const Document& doc, const std::string& format) {
    if (!doc.complex)
        throw invalid_input("converge: document needs a filtered_complex block");
    ComplexCouple cc = from_filtered_complex(*doc.complex);
    ConvergenceVerdict v = verdict(cc, doc.options.indexing);

    const bool lim = doc.options.indexing == IndexingConvention::lim_adams;
    std::ostringstream text;
    text << "convention: " << (lim ? "lim" : "colim") << "\n";
    for (const auto& c : v.clauses) text << c << "\n";
    for (const auto& n : v.notes) text << "note: " << n << "\n";
    text << "strong convergence: " << (v.strong_convergence ? "yes" : "NO") << "\n";

    json out;
    out["convention"] = lim ? "lim" : "colim";
    out["clauses"] = v.clauses;
    out["notes"] = v.notes;
    out["gamma_injective"] = v.gamma_injective;
    out["gamma_isomorphism"] = v.gamma_iso;
    out["lim1_zero"] = v.ml.lim1_zero;
    out["strong_convergence"] = v.strong_convergence;
    return {v.strong_convergence ? 0 : 2,
            format == "json" ? out.dump(2) + "\n" : text.str()};
}

CliResult cmd_pairing(const Document& doc, const std::string& format) {
    if (!doc.pairing) throw invalid_input("pairing: document needs a pairing block");
    const PairingBlock& pb = *doc.pairing;
    std::ostringstream text;
    json out;
    out["pages"] = json::array();

    PagePairing pp;
    if (pb.chain_mu) {
        TowerPairing tp{pb.w, pb.x, pb.y, *pb.chain_mu};
        auto violations = tower_pairing_violations(tp);
        if (!violations.empty()) {
            std::ostringstream err;
            err << "tower pairing rejected:\n";
            for (const auto& v : violations) err << "  " << v << "\n";
            return {1, err.str()};
        }
        text << "tower pairing invariants: OK\n";
        pp = induce_E1(tp);
    } else {
        pp = *pb.page1;
        text << "page-1 pairing supplied without a chain-level witness\n";
    }

    ComplexCouple ccw = from_filtered_complex(pb.w);
    ComplexCouple ccx = from_filtered_complex(pb.x);
    ComplexCouple ccy = from_filtered_complex(pb.y);
    int n = 1;
    for (const ComplexCouple* cc : {&ccw, &ccx, &ccy})
        n = std::max(n, re_infinity_check(cc->couple).max_n);
    n = std::min(n, env_page_cap());

    bool failed = false;
    for (int r = 1; r <= n && !failed; ++r) {
        PairedPages cur = pages_at(ccw, ccx, ccy, r);
        LeibnizReport rep = check_leibniz(pp, cur);
        json jp;
        jp["r"] = r;
        jp["leibniz"] = rep.pass;
        jp["witnesses"] = json::array();
        if (rep.pass) {
            text << "page " << r << ": Leibniz holds\n";
        } else {
            failed = true;
            text << "page " << r << ": Leibniz FAILS, descent refused\n";
            for (const auto& w : rep.witnesses) {
                const PresentedGroup& tg = cur.y.entries.at(w.target).group();
                std::ostringstream line;
                line << "pair (gen " << w.g << " at (" << w.left.p << "," << w.left.q
                     << "), gen " << w.h << " at (" << w.right.p << "," << w.right.q
                     << ")): residual " << render_element(tg, w.residual) << " at ("
                     << w.target.p << "," << w.target.q << ")";
                text << "  " << line.str() << "\n";
                jp["witnesses"].push_back(line.str());
            }
        }
        out["pages"].push_back(std::move(jp));
        if (!failed && r < n) pp = descend(pp, cur, pages_at(ccw, ccx, ccy, r + 1));
    }
    if (!failed) text << "E_infinity reached at page " << n << "\n";

    bool gamma_ok = true;
    if (!failed && pb.chain_mu) {
        GrCompatibilityReport rep = gr_compatibility({pb.w, pb.x, pb.y, *pb.chain_mu});
        gamma_ok = rep.pass;
        out["gamma_compatible"] = rep.pass;
        text << "Gamma compatibility: " << (rep.pass ? "OK" : "VIOLATED") << "\n";
        for (const auto& v : rep.violations) text << "  " << v << "\n";
    }

    const int code = failed || !gamma_ok ? 2 : 0;
    out["exit_code"] = code;
    return {code, format == "json" ? out.dump(2) + "\n" : text.str()};
}

int run_cli(int argc, char** argv) {
    CLI::App app{"spectral sequences of bounded filtered complexes"};
    app.require_subcommand(1);

    std::string input, format = "text", indexing;
    int rflag = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", input, "document path, or - for stdin")->required();
        sub->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--indexing", indexing, "grid convention")
            ->check(CLI::IsMember({"colim", "lim"}));
    };
    CLI::App* pages = app.add_subcommand("pages", "page tables and differentials");
    add_common(pages);
    pages->add_option("--r", rflag, "highest page to print");
    CLI::App* pairing = app.add_subcommand("pairing", "Leibniz/descent/Gamma report");
    add_common(pairing);
    CLI::App* converge = app.add_subcommand("converge", "convergence verdict");
    add_common(converge);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::string textin;
        if (input == "-") {
            std::ostringstream buf;
            buf << std::cin.rdbuf();
            textin = buf.str();
        } else {
            std::ifstream f(input);
            if (!f) {
                std::cerr << "error: cannot read " << input << "\n";
                return 1;
            }
            std::ostringstream buf;
            buf << f.rdbuf();
            textin = buf.str();
        }
        Document doc = parse_document(textin);
        if (indexing == "colim") doc.options.indexing = IndexingConvention::colim_adams;
        if (indexing == "lim") doc.options.indexing = IndexingConvention::lim_adams;

        CliResult res;
        if (pages->parsed())
            res = cmd_pages(doc, rflag, format);
        else if (pairing->parsed())
            res = cmd_pairing(doc, format);
        else
            res = cmd_converge(doc, format);
        std::cout << res.output;
        return res.exit_code;
    } catch (const invalid_input& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const internal_error& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace excouple
