#include "pathhom/cli.hpp"

#include "pathhom/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace pathhom {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Ring parse_ring(const std::string& s) {
    if (s == "q" || s == "Q") return Ring::q();
    if (s == "z" || s == "Z") return Ring::z();
    if (s.rfind("fp:", 0) == 0) return Ring::fp(std::stoull(s.substr(3)));
    throw std::invalid_argument("bad ring '" + s + "' (want q, z, or fp:<prime>)");
}

Digraph load_digraph(const std::string& path, std::ostream& err) {
    auto r = parse_digraph(read_file(path));
    for (const auto& w : r.warnings) err << path << ": warning: " << w << "\n";
    return std::move(r.digraph);
}

void render_text(std::ostream& out, const json& j, const std::string& indent) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || (v.is_array() && !v.empty() && v[0].is_structured())) {
                out << indent << k << ":\n";
                render_text(out, v, indent + "  ");
            } else if (v.is_array()) {
                out << indent << k << ":";
                for (const auto& e : v) out << " " << (e.is_string() ? e.get<std::string>() : e.dump());
                out << "\n";
            } else {
                out << indent << k << ": "
                    << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& e : j) {
            if (e.is_object()) {
                out << indent << "-";
                for (const auto& [k, v] : e.items())
                    out << " " << k << "="
                        << (v.is_string() ? v.get<std::string>() : v.dump());
                out << "\n";
            } else {
                out << indent << "- " << e.dump() << "\n";
            }
        }
    } else {
        out << indent << j.dump() << "\n";
    }
}

void emit(std::ostream& out, const json& j, bool text) {
    if (text)
        render_text(out, j, "");
    else
        out << j.dump() << "\n";
}

struct CayleyArgs {
    std::string group, gens;
    int radius = -1;
    int level = 2;
    int max_degree = 3;
};

void check_degree(int d, int cap = 6) {
    if (d < 0 || d > cap)
        throw std::invalid_argument("max degree must be in 0.." + std::to_string(cap));
}

void check_level(int l, int cap = 3) {
    if (l < 1 || l > cap)
        throw std::invalid_argument("level must be in 1.." + std::to_string(cap));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact path homology, magnitude homology and digraph coverings"};
    app.require_subcommand(1);

    bool text_output = false;
    app.add_flag("--text", text_output, "plain-text tables instead of JSON");

    // ph
    auto* ph_cmd = app.add_subcommand("ph", "path homology ranks of a digraph");
    std::string ph_file, ph_ring = "q", ph_voltage;
    int ph_deg = 3;
    bool ph_clusters = false;
    ph_cmd->add_option("file", ph_file)->required();
    ph_cmd->add_option("--ring", ph_ring);
    ph_cmd->add_option("--max-degree", ph_deg);
    ph_cmd->add_flag("--clusters", ph_clusters);
    ph_cmd->add_option("--voltage", ph_voltage);

    // magnitude
    auto* mag_cmd = app.add_subcommand("magnitude", "magnitude homology table MH^l_n");
    std::string mag_file, mag_ring = "q";
    long mag_l = 2;
    int mag_deg = 3;
    mag_cmd->add_option("file", mag_file)->required();
    mag_cmd->add_option("--l", mag_l);
    mag_cmd->add_option("--ring", mag_ring);
    mag_cmd->add_option("--max-degree", mag_deg);

    // mpss
    auto* mpss_cmd = app.add_subcommand("mpss", "magnitude-path spectral sequence page");
    std::string mpss_file, mpss_ring = "q";
    int mpss_r = 1, mpss_deg = 3;
    long mpss_s = 3;
    mpss_cmd->add_option("file", mpss_file)->required();
    mpss_cmd->add_option("--page", mpss_r)->required();
    mpss_cmd->add_option("--max-filtration", mpss_s);
    mpss_cmd->add_option("--max-degree", mpss_deg);
    mpss_cmd->add_option("--ring", mpss_ring);

    // pi1
    auto* pi_cmd = app.add_subcommand("pi1", "l-fundamental group presentation");
    std::string pi_file, pi_base;
    int pi_level = 2;
    bool pi_simplify = false;
    pi_cmd->add_option("file", pi_file)->required();
    pi_cmd->add_option("--level", pi_level);
    pi_cmd->add_option("--basepoint", pi_base);
    pi_cmd->add_flag("--simplify", pi_simplify);

    // cover
    auto* cover_cmd = app.add_subcommand("cover", "l-covering checks and constructions");
    cover_cmd->require_subcommand(1);
    std::string cv_base, cv_total, cv_map, cv_action, cv_path, cv_at;
    int cv_level = 2, cv_anchor = 0;
    auto* cv_check = cover_cmd->add_subcommand("check", "verify an l-covering");
    cv_check->add_option("--level", cv_level);
    cv_check->add_option("base", cv_base)->required();
    cv_check->add_option("total", cv_total)->required();
    cv_check->add_option("map", cv_map)->required();
    auto* cv_build = cover_cmd->add_subcommand("build", "build a cover from a fiber action");
    cv_build->add_option("--level", cv_level);
    cv_build->add_option("base", cv_base)->required();
    cv_build->add_option("action", cv_action)->required();
    auto* cv_deck = cover_cmd->add_subcommand("deck", "deck transformation group");
    cv_deck->add_option("--level", cv_level);
    cv_deck->add_option("base", cv_base)->required();
    cv_deck->add_option("total", cv_total)->required();
    cv_deck->add_option("map", cv_map)->required();
    auto* cv_lift = cover_cmd->add_subcommand("lift", "lift a base path through an anchor");
    cv_lift->add_option("--level", cv_level);
    cv_lift->add_option("base", cv_base)->required();
    cv_lift->add_option("total", cv_total)->required();
    cv_lift->add_option("map", cv_map)->required();
    cv_lift->add_option("--path", cv_path)->required();
    cv_lift->add_option("--anchor", cv_anchor);
    cv_lift->add_option("--at", cv_at)->required();

    // cayley
    auto* cay_cmd = app.add_subcommand("cayley", "Cayley digraph computations");
    cay_cmd->require_subcommand(1);
    CayleyArgs cay;
    auto add_cayley_common = [&](CLI::App* sub, bool with_radius) {
        sub->add_option("--group", cay.group)->required();
        sub->add_option("--gens", cay.gens)->required();
        if (with_radius) sub->add_option("--radius", cay.radius);
    };
    auto* cay_build = cay_cmd->add_subcommand("build", "emit the Cayley digraph or a ball");
    add_cayley_common(cay_build, true);
    auto* cay_ph = cay_cmd->add_subcommand("ph", "path homology via the abelian rank formula");
    add_cayley_common(cay_ph, false);
    cay_ph->add_option("--max-degree", cay.max_degree);
    auto* cay_rel = cay_cmd->add_subcommand("relations", "length-bounded relation words");
    add_cayley_common(cay_rel, false);
    cay_rel->add_option("--level", cay.level);
    auto* cay_pres = cay_cmd->add_subcommand("presentation", "presentation of F^l(G,S)");
    add_cayley_common(cay_pres, false);
    cay_pres->add_option("--level", cay.level);

    // boxprod
    auto* box_cmd = app.add_subcommand("boxprod", "box product of two digraphs");
    std::string box_a, box_b;
    box_cmd->add_option("a", box_a)->required();
    box_cmd->add_option("b", box_b)->required();

    // exhaust
    auto* ex_cmd = app.add_subcommand("exhaust", "invariants along an exhaustion");
    std::vector<std::string> ex_files;
    std::string ex_inv = "ph", ex_ring = "q";
    int ex_deg = 1, ex_window = 1;
    long ex_l = 1;
    bool ex_reduced = false;
    ex_cmd->add_option("files", ex_files)->required()->expected(-2);
    ex_cmd->add_option("--invariant", ex_inv);
    ex_cmd->add_option("--degree", ex_deg);
    ex_cmd->add_option("--l", ex_l);
    ex_cmd->add_option("--window", ex_window);
    ex_cmd->add_flag("--reduced", ex_reduced);
    ex_cmd->add_option("--ring", ex_ring);

    try {
        std::vector<std::string> argv = args;
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*ph_cmd) {
            check_degree(ph_deg);
            if (!ph_voltage.empty()) ph_clusters = true;
            Ring ring = parse_ring(ph_ring);
            Digraph x = load_digraph(ph_file, err);
            std::vector<Ring> rings{ring};
            if (ring.tag == RingTag::Z) rings.push_back(Ring::q());
            auto h = ph(x, rings, ph_deg);
            json j;
            j["ph"] = json::parse(homology_to_json(h, ring.tag == RingTag::Z));
            if (ph_clusters) {
                std::optional<VoltageLabeling> volt;
                if (!ph_voltage.empty()) volt = parse_voltage_file(x, read_file(ph_voltage));
                Ring cring = ring.tag == RingTag::Fp ? ring : Ring::q();
                j["clusters"] = json::array();
                for (int n = 0; n <= ph_deg; ++n) {
                    auto cl = cluster_decompose(x, n, volt ? &*volt : nullptr, cring);
                    json row;
                    row["degree"] = n;
                    row["components"] = json::parse(clusters_to_json(cl));
                    j["clusters"].push_back(std::move(row));
                }
            }
            emit(out, j, text_output);
            return 0;
        }

        if (*mag_cmd) {
            check_degree(mag_deg);
            if (mag_l < 0) throw std::invalid_argument("--l must be >= 0");
            Ring ring = parse_ring(mag_ring);
            Digraph x = load_digraph(mag_file, err);
            std::vector<Ring> rings{ring};
            json j;
            j["l_max"] = mag_l;
            j["ring"] = ring.key();
            j["entries"] = json::array();
            for (long l = 0; l <= mag_l; ++l) {
                auto h = magnitude_homology(x, l, rings);
                for (int n = 0; n <= mag_deg; ++n) {
                    json row;
                    row["l"] = l;
                    row["n"] = n;
                    if (ring.tag == RingTag::Z) {
                        row["rank"] = n <= l ? h.degrees[n].free_rank : 0;
                        row["torsion"] = json::array();
                        if (n <= l)
                            for (const Int& t : h.degrees[n].torsion)
                                row["torsion"].push_back(t.str());
                    } else {
                        row["rank"] = n <= l ? h.field_rank(n, ring) : 0;
                    }
                    j["entries"].push_back(std::move(row));
                }
            }
            emit(out, j, text_output);
            return 0;
        }

        if (*mpss_cmd) {
            check_degree(mpss_deg);
            if (mpss_r < 1) throw std::invalid_argument("--page must be >= 1");
            Ring ring = parse_ring(mpss_ring);
            if (ring.tag == RingTag::Z)
                throw std::invalid_argument("mpss needs field coefficients (q or fp:<p>)");
            Digraph x = load_digraph(mpss_file, err);
            auto entries = mpss_page(x, mpss_r, mpss_s, mpss_deg, ring);
            emit(out, json::parse(mpss_to_json(mpss_r, ring, entries)), text_output);
            return 0;
        }

        if (*pi_cmd) {
            check_level(pi_level);
            Digraph x = load_digraph(pi_file, err);
            int base = pi_base.empty() ? 0 : x.require_index(pi_base);
            auto pres = pi_l_presentation(x, base, pi_level);
            auto inv = abelianization(pres);
            if (pi_simplify) pres = tietze_substitute(pres);
            out << "# arrow generators: a<k> = k-th arrow in canonical order\n";
            for (int i = 0; i < x.num_arrows(); ++i) {
                auto [u, v] = x.arrows()[i];
                out << "# a" << i << " = (" << x.name(u) << " -> " << x.name(v) << ")\n";
            }
            out << presentation_text(pres);
            emit(out, json::parse(abelian_invariants_to_json(inv)), text_output);
            return 0;
        }

        if (*cover_cmd) {
            check_level(cv_level);
            Digraph base = load_digraph(cv_base, err);
            if (*cv_build) {
                FiberAction act = parse_action_file(base, read_file(cv_action));
                BuiltCover built = build_cover(base, cv_level, act);
                json j;
                j["total"] = json::parse(digraph_to_json(built.total));
                j["projection"] = json::object();
                for (int e = 0; e < built.total.num_vertices(); ++e)
                    j["projection"][built.total.name(e)] = base.name(built.projection[e]);
                emit(out, j, text_output);
                return 0;
            }
            Digraph total = load_digraph(cv_total, err);
            std::vector<int> pr = parse_vertex_map(total, base, read_file(cv_map));
            if (*cv_check) {
                auto chk = is_l_covering(total, base, pr, cv_level);
                json j;
                j["level"] = cv_level;
                j["verdict"] = chk.ok;
                if (!chk.ok) j["counterexample"] = chk.counterexample;
                emit(out, j, text_output);
                return chk.ok ? 0 : 1;
            }
            CoverMorphism p = make_cover(total, base, pr, cv_level);
            if (p.validated_level < cv_level)
                throw std::invalid_argument(
                    "the map is not an l-covering at level " + std::to_string(cv_level) + ": " +
                    is_l_covering(total, base, p.projection, cv_level).counterexample);
            if (*cv_deck) {
                DeckGroup g = deck_group(p, cv_level);
                emit(out, json::parse(deck_to_json(g, total)), text_output);
                return 0;
            }
            if (*cv_lift) {
                std::vector<int> bp;
                std::istringstream ps(cv_path);
                std::string tok;
                while (ps >> tok) bp.push_back(base.require_index(tok));
                auto lift = lift_path(p, bp, cv_anchor, total.require_index(cv_at));
                json j;
                j["lift"] = json::array();
                for (int e : lift) j["lift"].push_back(total.name(e));
                emit(out, j, text_output);
                return 0;
            }
        }

        if (*cay_cmd) {
            FGAbelian g = parse_abelian_group(cay.group);
            auto gens = parse_gen_list(g, cay.gens);
            if (*cay_build) {
                Digraph x = (cay.radius >= 0) ? cayley_ball(g, gens, cay.radius)
                                              : cayley_finite(g, gens);
                emit(out, json::parse(digraph_to_json(x)), text_output);
                return 0;
            }
            if (*cay_ph) {
                check_degree(cay.max_degree);
                json j;
                auto chk = check_abelian_ph_hypotheses(g, gens);
                j["hypotheses_ok"] = chk.ok;
                if (!chk.ok) {
                    j["violation"] = chk.violation;
                    emit(out, j, text_output);
                    return 1;
                }
                j["rho_rank"] = rho_kernel(g, gens).rank;
                j["ranks"] = abelian_ph(g, gens, cay.max_degree);
                emit(out, j, text_output);
                return 0;
            }
            check_level(cay.level, 4);
            std::vector<std::string> gen_names;
            for (const auto& e : gens) gen_names.push_back(g.str(e));
            if (*cay_rel) {
                emit(out, json::parse(relations_to_json(w_l_relations(g, gens, cay.level), gen_names)), text_output);
                return 0;
            }
            if (*cay_pres) {
                auto pres = f_l_presentation(g, gens, cay.level);
                auto inv = abelianization(pres);
                json j;
                j["generators"] = json::object();
                for (size_t i = 0; i < gens.size(); ++i)
                    j["generators"]["s" + std::to_string(i)] = gen_names[i];
                j["relators"] = json::array();
                for (const auto& r : pres.relators) {
                    std::string w;
                    for (int x : r) {
                        std::string nm = pres.generators.at(std::abs(x) - 1);
                        if (x < 0) nm[0] = 'S';
                        w += (w.empty() ? "" : " ") + nm;
                    }
                    j["relators"].push_back(w);
                }
                j["abelianization"] = json::parse(abelian_invariants_to_json(inv));
                j["abelianization_finite"] = (inv.rank == 0);
                emit(out, j, text_output);
                return 0;
            }
        }

        if (*box_cmd) {
            Digraph a = load_digraph(box_a, err);
            Digraph b = load_digraph(box_b, err);
            emit(out, json::parse(digraph_to_json(box_product(a, b))), text_output);
            return 0;
        }

        if (*ex_cmd) {
            check_degree(ex_deg);
            Ring ring = parse_ring(ex_ring);
            if (ring.tag == RingTag::Z)
                throw std::invalid_argument("exhaust needs field coefficients (q or fp:<p>)");
            std::vector<Digraph> seq;
            for (const auto& f : ex_files) seq.push_back(load_digraph(f, err));
            ExhaustInvariant inv;
            if (ex_inv == "ph") {
                inv.use_ph = true;
            } else if (ex_inv == "mh") {
                inv.use_ph = false;
                inv.l = ex_l;
            } else {
                throw std::invalid_argument("--invariant must be ph or mh");
            }
            inv.n = ex_deg;
            auto rep = exhaustion_report(seq, inv, ex_window, ex_reduced, ring);
            emit(out, json::parse(exhaust_to_json(rep)), text_output);
            return 0;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no command executed\n";
    return 2;
}

}  // namespace pathhom
