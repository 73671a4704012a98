// Command-line front end: parse rings, polynomials, and triangular elements,
// run the monoid operations, and emit the verification reports.
//
// Exit codes: 0 success, 1 failed verification or rejected input,
// 2 parse error, 3 enumeration cap exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "tripoly/workbench.hpp"

using namespace tripoly;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string ring_spec;
    int n = 2;
    std::string format = "text";
    std::size_t cap = 100000;
    u64 seed = 0x7269;
    int jobs = 0;
    int samples = 200;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_ring = true) {
    auto* ring = cmd->add_option("--ring", o.ring_spec, "ring spec, e.g. Z4, F3, F2^2:t^2+t+1");
    if (needs_ring) ring->required();
    cmd->add_option("--n", o.n, "number of variables (or arity, per subcommand)");
    cmd->add_option("--format", o.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--cap", o.cap, "materialization cap for induced groups");
    cmd->add_option("--seed", o.seed, "seed for randomized property bundles");
    cmd->add_option("--jobs", o.jobs, "worker threads for exhaustive checks (0 = auto)");
    cmd->add_option("--samples", o.samples, "sample count for randomized property bundles");
}

std::vector<int> parse_point(const RingPtr& ring, const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') throw ParseError("unbalanced parentheses in point: " + text);
        body = body.substr(1, body.size() - 2);
    }
    std::vector<int> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw ParseError("empty coordinate in point: " + text);
        long v = std::stol(cur);
        if (v < 0 || v >= static_cast<long>(ring->size()))
            throw ParseError("coordinate " + cur + " out of range for " + ring->spec_string());
        out.push_back(static_cast<int>(v));
        cur.clear();
    };
    for (char c : body) {
        if (c == ',')
            flush();
        else if (!std::isspace(static_cast<unsigned char>(c)))
            cur += c;
    }
    flush();
    return out;
}

DualPoly parse_dual(const RingPtr& ring, int n, const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (static_cast<int>(parts.size()) != n + 1)
        throw ParseError("expected " + std::to_string(n + 1) + " comma-separated components");
    std::vector<MultiPoly> comps;
    for (const auto& p : parts) comps.push_back(MultiPoly::parse(ring, 1, p));
    return DualPoly::make(ring, n, std::move(comps));
}

std::string point_str(const std::vector<int>& pt) {
    std::string out = "(";
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(pt[i]);
    }
    return out + ")";
}

int emit_results(const std::vector<CheckResult>& results, const std::string& format) {
    bool all_pass = true;
    if (format == "json") {
        std::cout << results_to_json(results) << "\n";
        for (const auto& r : results) all_pass = all_pass && r.pass;
    } else {
        for (const auto& r : results) {
            all_pass = all_pass && r.pass;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%7.2fs", r.seconds);
            std::cout << (r.pass ? "PASS" : "FAIL") << " " << buf << "  " << r.name << "\n";
        }
        std::cout << (all_pass ? "all checks passed" : "some checks FAILED") << "\n";
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for triangular vector-permutation polynomials over finite rings"};
    app.require_subcommand(1);

    CommonOpts o;
    std::vector<std::string> vecs;
    std::string point_text, target_text, f_text, g_text, level_text = "induced";

    auto* compose = app.add_subcommand("compose", "compose two triangular elements");
    add_common(compose, o);
    compose->add_option("--vec", vecs, "vector polynomial \"(p1, ..., pn)\"")->expected(2);

    auto* invert = app.add_subcommand("invert", "invert a triangular unit");
    add_common(invert, o);
    invert->add_option("--vec", vecs)->expected(1);

    auto* apply = app.add_subcommand("apply", "apply a triangular element to a point");
    add_common(apply, o);
    apply->add_option("--vec", vecs)->expected(1);
    apply->add_option("--point", point_text, "point \"(a1, ..., an)\"")->required();

    auto* solve = app.add_subcommand("solve", "find the preimage of a point");
    add_common(solve, o);
    solve->add_option("--vec", vecs)->expected(1);
    solve->add_option("--target", target_text, "target \"(c1, ..., cn)\"")->required();

    auto* member = app.add_subcommand("member", "test membership in the triangular monoid");
    add_common(member, o);
    member->add_option("--vec", vecs)->expected(1);

    auto* unit = app.add_subcommand("unit", "test invertibility in the triangular monoid");
    add_common(unit, o);
    unit->add_option("--vec", vecs)->expected(1);

    auto* equiv = app.add_subcommand("equiv", "test function equivalence of two elements");
    add_common(equiv, o);
    equiv->add_option("--vec", vecs)->expected(2);

    auto* count = app.add_subcommand("count-functions", "count induced functions on R^n");
    add_common(count, o);
    bool dump_tables = false;
    count->add_flag("--dump", dump_tables, "include the function tables as flat value arrays");

    std::string poly_text;
    auto* pprops = app.add_subcommand("poly-props", "one-variable polynomial predicates");
    add_common(pprops, o);
    pprops->add_option("--poly", poly_text, "one-variable polynomial over the ring")->required();

    auto* order = app.add_subcommand("induced-order", "order of the induced permutation group");
    add_common(order, o);

    auto* ratios = app.add_subcommand("verify-ratios", "unit-valued and permutation ratios");
    add_common(ratios, o);

    auto* vorder = app.add_subcommand("verify-order", "order formula against materialization");
    add_common(vorder, o);

    auto* trmt = app.add_subcommand("tr-vs-mt", "compare unit-induced and monoid-induced groups");
    add_common(trmt, o);

    auto* decomp = app.add_subcommand("verify-decomposition", "verify the split decomposition");
    add_common(decomp, o);
    decomp->add_option("--level", level_text, "monoid, group, or induced")
        ->check(CLI::IsMember({"monoid", "group", "induced"}));

    auto* props = app.add_subcommand("group-props", "solvability, nilpotency, commutativity");
    add_common(props, o);

    auto* deval = app.add_subcommand("dual-eval", "evaluate f(g) over the dual numbers");
    add_common(deval, o);
    deval->add_option("--f", f_text, "components \"g0, g1, ..., gn\"")->required();
    deval->add_option("--g", g_text)->required();

    auto* dperm = app.add_subcommand("dual-perm", "permutation test over the dual numbers");
    add_common(dperm, o);
    dperm->add_option("--f", f_text)->required();

    auto* embed = app.add_subcommand("embed", "embed a dual-number permutation polynomial");
    add_common(embed, o);
    embed->add_option("--f", f_text)->required();

    auto* vall = app.add_subcommand("verify-all", "run the full verification bundle");
    add_common(vall, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        RingPtr ring = Ring::make(o.ring_spec, Ring::kDefaultCap);
        bool as_json = o.format == "json";

        auto tri_of = [&](const std::string& text) {
            return TriElem::from_vecpoly(VecPoly::parse(ring, o.n, text));
        };
        auto print_tri = [&](const TriElem& t) {
            if (as_json)
                std::cout << t.to_json() << "\n";
            else
                std::cout << t.to_vecpoly().str() << "\n";
        };

        if (*compose) {
            print_tri(tri_of(vecs[0]).compose(tri_of(vecs[1])));
        } else if (*invert) {
            print_tri(tri_of(vecs[0]).inverse());
        } else if (*apply) {
            auto t = tri_of(vecs[0]);
            std::cout << point_str(t.apply(parse_point(ring, point_text))) << "\n";
        } else if (*solve) {
            auto t = tri_of(vecs[0]);
            std::cout << point_str(t.solve_preimage(parse_point(ring, target_text))) << "\n";
        } else if (*member) {
            try {
                tri_of(vecs[0]);
            } catch (const std::runtime_error& e) {
                std::cout << (as_json ? json{{"accepted", false}, {"reason", e.what()}}.dump()
                                      : std::string("rejected: ") + e.what())
                          << "\n";
                return 1;
            }
            std::cout << (as_json ? json{{"accepted", true}}.dump() : "accepted") << "\n";
        } else if (*unit) {
            bool u = tri_of(vecs[0]).is_unit();
            std::cout << (as_json ? json{{"unit", u}}.dump() : std::string(u ? "unit" : "not a unit"))
                      << "\n";
            return u ? 0 : 1;
        } else if (*equiv) {
            bool e = tri_of(vecs[0]).equiv(tri_of(vecs[1]));
            std::cout << (as_json ? json{{"equivalent", e}}.dump()
                                  : std::string(e ? "equivalent" : "not equivalent"))
                      << "\n";
            return e ? 0 : 1;
        } else if (*count) {
            FuncSpace f = enumerate_poly_functions(ring, o.n);
            FuncSpace fu = enumerate_unit_valued(f);
            json j{{"ring", ring->spec_string()},
                   {"n_or_k", o.n},
                   {"counts", {{"func", f.size()}, {"unit_func", fu.size()}}}};
            if (o.n == 1) j["counts"]["perm"] = enumerate_poly_permutations(ring).size();
            if (dump_tables) {
                json arr = json::array();
                for (const auto& t : f.tables) arr.push_back(t);
                j["tables"] = std::move(arr);
            }
            if (as_json || dump_tables)
                std::cout << j.dump() << "\n";
            else
                std::cout << "functions: " << f.size() << "\nunit-valued: " << fu.size() << "\n";
        } else if (*pprops) {
            MultiPoly f = MultiPoly::parse(ring, 1, poly_text);
            json j{{"ring", ring->spec_string()},
                   {"poly", f.str()},
                   {"permutation", is_permutation_poly(f)},
                   {"unit_valued", is_unit_valued(f)},
                   {"unit_poly", is_unit_poly(f)},
                   {"automorphism", is_automorphism(f)}};
            if (is_automorphism(f)) j["inverse"] = automorphism_inverse(f).str();
            if (as_json)
                std::cout << j.dump() << "\n";
            else
                std::cout << "permutation: " << (j["permutation"].get<bool>() ? "yes" : "no")
                          << "\nunit-valued: " << (j["unit_valued"].get<bool>() ? "yes" : "no")
                          << "\nunit polynomial: " << (j["unit_poly"].get<bool>() ? "yes" : "no")
                          << "\nautomorphism: " << (j["automorphism"].get<bool>() ? "yes" : "no")
                          << "\n";
        } else if (*order) {
            u64 value = mt_order_formula(ring, o.n);
            if (as_json)
                std::cout << json{{"ring", ring->spec_string()}, {"n", o.n}, {"order", value}}.dump()
                          << "\n";
            else
                std::cout << value << "\n";
        } else if (*ratios) {
            int k = ratios->count("--n") ? o.n : 1;
            return emit_results({check_ratios(ring, k)}, o.format);
        } else if (*vorder) {
            return emit_results({check_order(ring, o.n, o.cap, o.jobs)}, o.format);
        } else if (*trmt) {
            return emit_results({check_tr_vs_mt(ring, o.n, o.cap)}, o.format);
        } else if (*decomp) {
            DecompositionLevel level = level_text == "monoid"  ? DecompositionLevel::Monoid
                                       : level_text == "group" ? DecompositionLevel::Group
                                                               : DecompositionLevel::Induced;
            return emit_results(
                {check_decomposition(ring, o.n, level, o.jobs, o.seed, std::max(10, o.samples / 10))},
                o.format);
        } else if (*props) {
            return emit_results({check_group_props(ring, o.n, o.cap)}, o.format);
        } else if (*deval) {
            DualPoly f = parse_dual(ring, o.n, f_text);
            DualPoly g = parse_dual(ring, o.n, g_text);
            DualPoly r = dual_eval(f, g);
            std::cout << (as_json ? r.to_json() : r.str()) << "\n";
        } else if (*dperm) {
            DualPoly f = parse_dual(ring, o.n, f_text);
            bool p = is_perm_dual(f);
            json j{{"permutation", p}};
            if (checked_pow(ring->size(), static_cast<u64>(o.n) + 1) <= 4096)
                j["bruteforce_agrees"] = is_perm_dual_bruteforce(f) == p;
            std::cout << (as_json ? j.dump() : std::string(p ? "permutation" : "not a permutation"))
                      << "\n";
            return p ? 0 : 1;
        } else if (*embed) {
            DualPoly f = parse_dual(ring, o.n, f_text);
            TriElem t = embed_psi(f);
            std::cout << (as_json ? t.to_json() : t.to_vecpoly().str()) << "\n";
        } else if (*vall) {
            VerifyOptions opts;
            opts.n = o.n;
            opts.seed = o.seed;
            opts.jobs = o.jobs;
            opts.group_cap = o.cap;
            opts.samples = o.samples;
            return emit_results(verify_all(ring, opts), o.format);
        }
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
