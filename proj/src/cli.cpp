#include "umahler/cli.hpp"

#include <CLI11.hpp>

#include "umahler/minf.hpp"

namespace umahler {

namespace {

struct CliConfig {
    bool json = false;
    int digits = 27;
    long guard = 10000;
    int workers = 1;

    EnumOptions enum_options() const { return EnumOptions{guard, workers, std::nullopt}; }
    MinfOptions minf_options() const { return MinfOptions{enum_options(), {}, true}; }
};

Int parse_int_arg(const std::string& text) {
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw parse_error("malformed integer '" + text + "'", 0);
    }
}

QuadPoly poly_from_args(const std::vector<std::string>& coeffs) {
    if (coeffs.size() == 2) return QuadPoly(0, parse_int_arg(coeffs[0]), parse_int_arg(coeffs[1]));
    if (coeffs.size() == 3)
        return QuadPoly(parse_int_arg(coeffs[0]), parse_int_arg(coeffs[1]),
                        parse_int_arg(coeffs[2]));
    throw domain_error("a polynomial takes 2 or 3 coefficients (degree > 2 is out of scope)");
}

QuadSurd canonical_root(const QuadPoly& f) {
    if (f.degree() == 1) return poly_root(f, 0, true);
    Int k = squarefree_decompose(f.discriminant()).first;
    return poly_root(f, k, true);
}

nlohmann::json measure_json(const MahlerValue& m, int digits) {
    return {{"exact", m.str()}, {"decimal", m.decimal(digits)}};
}

void print_minf(const MinfResult& res, const std::string& input, const CliConfig& cfg,
                std::ostream& out) {
    if (cfg.json) {
        out << minf_to_json(res, input, cfg.digits).dump(2) << "\n";
        return;
    }
    out << "M_inf(" << input << ")\n";
    out << "  exact   = " << res.value.str() << "\n";
    out << "  decimal = " << res.value.decimal(cfg.digits) << "\n";
    if (res.j_index) {
        out << "  J       = " << *res.j_index;
        if (res.bset) out << " of " << res.bset->entries.size();
        out << "\n";
        out << "  b_J     = " << to_string(res.b_j->value) << "  (minpoly "
            << res.b_j->minpoly.to_string() << ")\n";
    } else {
        out << "  (root of unity)\n";
    }
    if (res.witness && res.bset) {
        out << "  witness = alpha^" << res.witness->s.get_str();
        if (res.witness->zeta != QuadSurd(1))
            out << " * (" << to_string(res.witness->zeta) << ")";
        out << " =";
        bool any = false;
        for (size_t i = 0; i < res.witness->exps.size(); ++i) {
            if (res.witness->exps[i] == 0) continue;
            out << (any ? " * " : " ") << "(" << to_string(res.bset->entries[i].value) << ")^"
                << res.witness->exps[i].get_str();
            any = true;
        }
        if (!any) out << " 1";
        out << "\n";
    }
}

int run_selftest(const CliConfig& cfg, std::ostream& out) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        out << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    check("M_inf(4) = 2", minf_rational(make_rat(4)).value.value == QuadSurd(2) &&
                              minf(QuadSurd(4), cfg.minf_options()).value.value == QuadSurd(2));

    const std::string block =
        "(1, 3, -3) -- 3.791287847477920003294023597\n"
        "(1, 5, 1) -- 4.791287847477920003294023597\n"
        "(3, 3, -1) -- 3.791287847477920003294023597\n";
    check("B2List(1,-5,1,21) block", b2list_compat(1, -5, 1, 21, 27, cfg.enum_options()) == block);

    QuadSurd alpha = parse_surd("(5+sqrt(21))/2");
    MinfResult res = minf(alpha, cfg.minf_options());
    check("M_inf((5+sqrt(21))/2) = (3+sqrt(21))/2",
          res.value.value == parse_surd("(3+sqrt(21))/2") &&
              res.b_j->minpoly == QuadPoly(1, 3, -3));

    QuadSurd two_i = parse_surd("2*sqrt(-1)");
    check("M(2i) = 4, Mbar(2i) = 2", mahler_surd(two_i).value == QuadSurd(4) &&
                                         mbar(two_i).measure.value == QuadSurd(2));

    OrderedBSet b4 = build_ordered_bset(QuadSurd(4), cfg.enum_options());
    check("B(4) has 22 signed elements", b4.plus_minus_closure().size() == 22);

    out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 1;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out) {
    CliConfig cfg;
    CLI::App app{"exact ultrametric Mahler measures of rational and quadratic numbers"};
    app.fallthrough();
    app.add_flag("--json", cfg.json, "machine readable output");
    app.add_option("--digits", cfg.digits, "decimal places printed")->capture_default_str();
    app.add_option("--guard", cfg.guard, "enumeration guard on floor(M)")
        ->envname("UMAHLER_GUARD")
        ->capture_default_str();
    app.add_option("--workers", cfg.workers, "enumeration worker threads")->capture_default_str();
    app.require_subcommand(1);

    auto* minf_cmd = app.add_subcommand("minf", "ultrametric Mahler measure M_inf");
    std::string minf_rational_text;
    std::vector<std::string> minf_quadratic;
    minf_cmd->add_option("--rational", minf_rational_text, "rational input m/n");
    minf_cmd->add_option("--quadratic", minf_quadratic,
                         "minimal polynomial coefficients A B C (root (-B+sqrt(D))/(2A))")
        ->expected(3);

    auto* mahler_cmd = app.add_subcommand("mahler", "Mahler measure M");
    std::string mahler_surd_text;
    std::vector<std::string> mahler_poly_coeffs;
    mahler_cmd->add_option("value", mahler_surd_text, "surd, e.g. \"(5+sqrt(21))/2\"");
    mahler_cmd->add_option("--poly", mahler_poly_coeffs, "polynomial coefficients (2 or 3)")
        ->expected(-2);

    auto* mbar_cmd = app.add_subcommand("mbar", "modified Mahler measure M-bar");
    std::string mbar_surd_text;
    std::vector<std::string> mbar_poly_coeffs;
    mbar_cmd->add_option("value", mbar_surd_text, "surd input");
    mbar_cmd->add_option("--poly", mbar_poly_coeffs, "polynomial coefficients (2 or 3)")
        ->expected(-2);

    auto* bset_cmd = app.add_subcommand("bset", "ordered B-set of a surd");
    std::string bset_text;
    bset_cmd->add_option("value", bset_text, "surd input")->required();

    auto* b2list_cmd = app.add_subcommand("b2list", "quadratic B-set enumeration lines");
    std::vector<std::string> b2args;
    b2list_cmd->add_option("coeffs", b2args, "A B C k")->expected(4);

    auto* unit_cmd = app.add_subcommand("unit", "fundamental unit of Q(sqrt(k))");
    std::string unit_k;
    unit_cmd->add_option("k", unit_k, "squarefree k > 0")->required();

    auto* relations_cmd = app.add_subcommand("relations", "multiplicative relation lattice");
    std::vector<std::string> relation_gens;
    relations_cmd->add_option("gens", relation_gens, "surds, one field")->required();

    auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in golden checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    }
    if (cfg.digits < 1) throw domain_error("digits must be >= 1");
    if (cfg.guard < 1) throw domain_error("guard must be >= 1");

    if (minf_cmd->parsed()) {
        bool have_rat = !minf_rational_text.empty();
        bool have_quad = !minf_quadratic.empty();
        if (have_rat == have_quad)
            throw parse_error("minf needs exactly one of --rational / --quadratic", 0);
        if (have_rat) {
            Rat r = rat_from_string(minf_rational_text);
            MinfResult res = minf_rational(r, true, cfg.minf_options());
            print_minf(res, rat_to_string(r), cfg, out);
        } else {
            QuadPoly f = poly_from_args(minf_quadratic);
            QuadSurd alpha = canonical_root(f);
            MinfResult res = minf(alpha, cfg.minf_options());
            print_minf(res, to_string(alpha), cfg, out);
        }
        return 0;
    }
    if (mahler_cmd->parsed() || mbar_cmd->parsed()) {
        bool is_mbar = mbar_cmd->parsed();
        const std::string& text = is_mbar ? mbar_surd_text : mahler_surd_text;
        const std::vector<std::string>& coeffs = is_mbar ? mbar_poly_coeffs : mahler_poly_coeffs;
        if (text.empty() == coeffs.empty())
            throw parse_error("give either a surd or --poly coefficients", 0);
        QuadSurd x = coeffs.empty() ? parse_surd(text) : canonical_root(poly_from_args(coeffs));
        if (is_mbar) {
            MBarResult r = mbar(x);
            if (cfg.json) {
                out << nlohmann::json{{"input", to_string(x)},
                                      {"mbar", measure_json(r.measure, cfg.digits)},
                                      {"zeta", {{"order", r.zeta_order},
                                                {"value", to_string(r.zeta)}}},
                                      {"reduced", to_string(r.reduced)}}
                           .dump(2)
                    << "\n";
            } else {
                out << "Mbar(" << to_string(x) << ")\n";
                out << "  exact   = " << r.measure.str() << "\n";
                out << "  decimal = " << r.measure.decimal(cfg.digits) << "\n";
                out << "  zeta    = " << to_string(r.zeta) << "  (order " << r.zeta_order << ")\n";
                out << "  reduced = " << to_string(r.reduced) << "\n";
            }
        } else {
            MahlerValue m = mahler_surd(x);
            if (cfg.json) {
                out << nlohmann::json{{"input", to_string(x)},
                                      {"mahler", measure_json(m, cfg.digits)}}
                           .dump(2)
                    << "\n";
            } else {
                out << "M(" << to_string(x) << ")\n";
                out << "  exact   = " << m.str() << "\n";
                out << "  decimal = " << m.decimal(cfg.digits) << "\n";
            }
        }
        return 0;
    }
    if (bset_cmd->parsed()) {
        QuadSurd alpha = parse_surd(bset_text);
        OrderedBSet bset = build_ordered_bset(alpha, cfg.enum_options());
        if (cfg.json) {
            out << nlohmann::json{{"alpha", to_string(alpha)},
                                  {"measure", measure_json(bset.alpha_measure, cfg.digits)},
                                  {"entries", bset.to_json(cfg.digits)}}
                       .dump(2)
                << "\n";
        } else {
            out << "B(" << to_string(alpha) << "): " << bset.entries.size()
                << " entries, M(alpha) = " << bset.alpha_measure.str() << "\n";
            size_t idx = 1;
            for (const BSetEntry& e : bset.entries) {
                out << "  " << idx++ << ". " << to_string(e.value) << "  (minpoly "
                    << e.minpoly.to_string() << ", Mbar = " << e.mbar.measure.str() << " ~ "
                    << e.mbar.measure.decimal(std::min(cfg.digits, 9)) << ")\n";
            }
        }
        return 0;
    }
    if (b2list_cmd->parsed()) {
        out << b2list_compat(parse_int_arg(b2args[0]), parse_int_arg(b2args[1]),
                             parse_int_arg(b2args[2]), parse_int_arg(b2args[3]), cfg.digits,
                             cfg.enum_options());
        return 0;
    }
    if (unit_cmd->parsed()) {
        QuadSurd eps = fundamental_unit(parse_int_arg(unit_k));
        if (cfg.json) {
            out << nlohmann::json{{"k", unit_k},
                                  {"unit", to_string(eps)},
                                  {"norm", rat_to_string(eps.norm())},
                                  {"decimal", decimal_expand(eps, cfg.digits)}}
                       .dump(2)
                << "\n";
        } else {
            out << to_string(eps) << "\n";
        }
        return 0;
    }
    if (relations_cmd->parsed()) {
        std::vector<QuadSurd> gens;
        for (const std::string& g : relation_gens) gens.push_back(parse_surd(g));
        RelationLattice rl = relation_lattice(gens);
        if (cfg.json) {
            nlohmann::json basis = nlohmann::json::array();
            for (const IntVec& row : rl.basis) {
                nlohmann::json jr = nlohmann::json::array();
                for (const Int& v : row)
                    jr.push_back(v.fits_slong_p() ? nlohmann::json(v.get_si())
                                                  : nlohmann::json(v.get_str()));
                basis.push_back(jr);
            }
            nlohmann::json jg = nlohmann::json::array();
            for (const QuadSurd& g : gens) jg.push_back(to_string(g));
            out << nlohmann::json{{"generators", jg},
                                  {"field_k", rl.field_k.get_si()},
                                  {"basis", basis}}
                       .dump(2)
                << "\n";
        } else {
            if (rl.basis.empty()) {
                out << "no relations (multiplicatively independent mod torsion)\n";
            } else {
                for (const IntVec& row : rl.basis) {
                    bool first = true;
                    for (size_t i = 0; i < row.size(); ++i) {
                        if (row[i] == 0) continue;
                        out << (first ? "" : " * ") << "(" << to_string(gens[i]) << ")^"
                            << row[i].get_str();
                        first = false;
                    }
                    out << " = root of unity\n";
                }
            }
        }
        return 0;
    }
    if (selftest_cmd->parsed()) return run_selftest(cfg, out);
    throw parse_error("no subcommand given", 0);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out);
    } catch (const parse_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        err << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace umahler
