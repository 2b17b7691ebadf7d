#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sseq/chart.hpp"
#include "sseq/generator.hpp"
#include "sseq/tower_io.hpp"

using namespace sseq;

namespace {

int exit_input_error(const std::exception& e)
{
    std::cerr << "error: " << e.what() << "\n";
    return 2;
}

void write_json_report(const std::string& path, const nlohmann::json& j)
{
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot write JSON report to " + path);
    out << j.dump(2) << "\n";
}

void print_report(const VerificationReport& rep)
{
    std::cout << "condition " << rep.condition;
    if (!rep.premises.empty())
        std::cout << " " << line_spec_str(rep.premises.front());
    std::cout << ": " << (rep.holds ? "HOLDS" : "FAILS") << "\n";
    for (const auto& c : rep.candidates)
        std::cout << "candidate " << c.label << " intercept="
                  << (c.intercept ? c.intercept->str() : "-inf") << " "
                  << (c.holds ? "holds" : "fails") << "\n";
    for (const auto& w : rep.witnesses) {
        std::cout << "witness s=" << w.s << " t=" << w.t << " dim=" << w.dim;
        if (!w.note.empty())
            std::cout << " " << w.note;
        std::cout << "\n";
    }
    for (const auto& n : rep.notes)
        std::cout << "note: " << n << "\n";
}

int finish(const VerificationReport& rep, const std::string& json_path)
{
    print_report(rep);
    if (!json_path.empty())
        write_json_report(json_path, report_to_json(rep));
    return rep.holds ? 0 : 1;
}

std::vector<GradedComplex> load_family(const Tower& tower, const std::vector<std::string>& files)
{
    if (files.empty())
        return default_family(tower);
    std::vector<GradedComplex> fam;
    for (const auto& f : files)
        fam.push_back(parse_tower_file(f).total());
    return fam;
}

int run_fuzz(std::uint64_t seed, int count, std::uint32_t p)
{
    TowerParams params;
    params.p = p;
    bool all_ok = true;
    for (int i = 0; i < count; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Tower t = random_tower(s, params);
        int gens = 0;
        for (int lv = 0; lv <= t.length(); ++lv)
            gens = std::max(gens, t.level(lv).total_dim());
        bool pages_ok = true, les_ok = true, conv_ok = true;
        ExactCouple c = couple_from_tower(t);
        for (int r = 1; r <= t.length() + 2; ++r) {
            Page pg = page_of_couple(c, r);
            if (!(pg.module.dims == oracle_page(t, r).dims))
                pages_ok = false;
            if (!verify_les(c).empty())
                les_ok = false;
            if (r <= t.length() + 1)
                c = derive(c);
        }
        Convergence conv = e_infinity(t);
        conv_ok = conv.page_matches && conv.totals_match;
        std::cout << "seed=" << s << " p=" << p << " S=" << t.length() << " gens=" << gens
                  << " pages=" << (pages_ok ? "ok" : "FAIL")
                  << " les=" << (les_ok ? "ok" : "FAIL")
                  << " convergence=" << (conv_ok ? "ok" : "FAIL") << "\n";
        all_ok = all_ok && pages_ok && les_ok && conv_ok;
    }
    std::cout << "fuzz: " << (all_ok ? "all checks passed" : "FAILURES FOUND") << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral sequences of strictly filtered complexes over a prime field"};
    app.require_subcommand(1);

    std::string tower_file, json_path, w_m = "0", w_b = "0", format = "text";
    std::vector<std::string> w_files;
    int r = 1, r_max = 0, cond = 1, count = 10;
    std::uint64_t seed = 1;
    std::uint32_t fuzz_p = 2;

    auto* cmd_page = app.add_subcommand("page", "print the entries of a page");
    cmd_page->add_option("tower", tower_file)->required();
    cmd_page->add_option("--r", r, "page index")->required();

    auto* cmd_chart = app.add_subcommand("chart", "render a page as text, csv or svg");
    cmd_chart->add_option("tower", tower_file)->required();
    cmd_chart->add_option("--r", r)->required();
    cmd_chart->add_option("--format", format, "text|svg|csv");
    bool with_line = false;
    cmd_chart->add_flag("--line", with_line, "overlay the line s = m(t-s)+b (svg)");
    cmd_chart->add_option("--m", w_m);
    cmd_chart->add_option("--b", w_b);

    auto* cmd_check = app.add_subcommand("check", "check one of the vanishing conditions 1-4");
    cmd_check->add_option("tower", tower_file)->required();
    cmd_check->add_option("--cond", cond)->required()->check(CLI::Range(1, 4));
    cmd_check->add_option("--m", w_m)->required();
    cmd_check->add_option("--r", r)->required();
    cmd_check->add_option("--b", w_b)->required();
    cmd_check->add_option("--W", w_files, "extra tower files whose F_0 joins the W family");
    cmd_check->add_option("--json", json_path);

    auto* cmd_min = app.add_subcommand("min-intercept", "least intercept with a clean region");
    cmd_min->add_option("tower", tower_file)->required();
    cmd_min->add_option("--m", w_m)->required();
    cmd_min->add_option("--r", r)->required();

    auto* cmd_lemma = app.add_subcommand("lemma", "verify the four shift rules empirically");
    cmd_lemma->add_option("tower", tower_file)->required();
    cmd_lemma->add_option("--m", w_m)->required();
    cmd_lemma->add_option("--rmax", r_max);
    cmd_lemma->add_option("--W", w_files, "family files (default: spheres across the window)");
    cmd_lemma->add_option("--json", json_path);

    auto* cmd_generic = app.add_subcommand("generic", "closure checks");
    cmd_generic->require_subcommand(1);
    std::string map_file, i_file, j_file;
    auto* cmd_cof = cmd_generic->add_subcommand("cofiber", "two-out-of-three along a cofiber");
    cmd_cof->add_option("map", map_file)->required();
    cmd_cof->add_option("--m", w_m)->required();
    cmd_cof->add_option("--rmax", r_max);
    cmd_cof->add_option("--json", json_path);
    auto* cmd_ret = cmd_generic->add_subcommand("retract", "inheritance along a retract");
    cmd_ret->add_option("i", i_file, "map Y -> X")->required();
    cmd_ret->add_option("j", j_file, "map X -> Y")->required();
    cmd_ret->add_option("--m", w_m)->required();
    cmd_ret->add_option("--r", r)->required();
    cmd_ret->add_option("--b", w_b)->required();
    cmd_ret->add_option("--json", json_path);

    auto* cmd_ghost = app.add_subcommand("ghost", "composite structure maps are ghosts");
    cmd_ghost->add_option("tower", tower_file)->required();
    cmd_ghost->add_option("--r", r)->required();
    cmd_ghost->add_option("--b", w_b)->required();
    cmd_ghost->add_option("--json", json_path);

    auto* cmd_fuzz = app.add_subcommand("fuzz", "randomized self-checks");
    cmd_fuzz->add_option("--seed", seed)->required();
    cmd_fuzz->add_option("--count", count)->required();
    cmd_fuzz->add_option("--p", fuzz_p);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*cmd_page) {
            Tower t = parse_tower_file(tower_file).to_tower();
            Page pg = page(t, r);
            std::cout << "page r=" << r << " entries=" << pg.module.dims.size() << "\n";
            for (const auto& [b, d] : pg.module.dims)
                std::cout << "s=" << b.s << " t=" << b.t << " dim=" << d << "\n";
            return 0;
        }
        if (*cmd_chart) {
            Tower t = parse_tower_file(tower_file).to_tower();
            std::optional<LineSpec> overlay;
            if (with_line)
                overlay = LineSpec(Rational::parse(w_m), Rational::parse(w_b), r);
            std::cout << emit_chart(page(t, r), chart_format_from(format), overlay);
            return 0;
        }
        if (*cmd_check) {
            FilteredComplex f = parse_tower_file(tower_file);
            Tower t = f.to_tower();
            LineSpec spec(Rational::parse(w_m), Rational::parse(w_b), r);
            VerificationReport rep;
            switch (cond) {
            case 1: rep = check_cond1(t, spec); break;
            case 2: rep = check_cond2(t, spec); break;
            case 3: rep = check_cond3(t, spec, load_family(t, w_files)); break;
            default: rep = check_cond4(t, spec, load_family(t, w_files)); break;
            }
            return finish(rep, json_path);
        }
        if (*cmd_min) {
            Tower t = parse_tower_file(tower_file).to_tower();
            Rational m = Rational::parse(w_m);
            auto bd = min_intercept(t, m, r, Flavor::D);
            auto be = min_intercept(t, m, r, Flavor::E);
            std::cout << "D: " << (bd ? bd->str() : "-inf") << "\n";
            std::cout << "E: " << (be ? be->str() : "-inf") << "\n";
            return 0;
        }
        if (*cmd_lemma) {
            Tower t = parse_tower_file(tower_file).to_tower();
            Rational m = Rational::parse(w_m);
            int rm = r_max > 0 ? r_max : t.length() + 2;
            std::vector<GradedComplex> fam;
            if (w_files.empty()) {
                auto window = t.degree_window();
                fam = sphere_family(t.p(), window ? window->first - 1 : -1,
                                    window ? window->second + 1 : 1);
            } else {
                fam = load_family(t, w_files);
            }
            auto reports = verify_lemma(t, m, fam, rm);
            bool all = true;
            nlohmann::json jall = nlohmann::json::array();
            for (const auto& rep : reports) {
                std::string rlabel;
                for (const auto& n : rep.notes)
                    if (n.rfind("r=", 0) == 0)
                        rlabel = n;
                std::cout << rep.condition << " " << rlabel << " "
                          << (rep.holds ? "holds" : "FAILS");
                for (const auto& c : rep.candidates)
                    std::cout << " [" << c.label << ": " << (c.holds ? "holds" : "fails") << "]";
                std::cout << "\n";
                all = all && rep.holds;
                jall.push_back(report_to_json(rep));
            }
            if (!json_path.empty())
                write_json_report(json_path, jall);
            std::cout << "lemma: " << (all ? "all implications hold" : "counterexample found")
                      << "\n";
            return all ? 0 : 1;
        }
        if (*cmd_cof) {
            LoadedMap lm = parse_map_file(map_file);
            TowerMap f = lm.tower_map();
            VerificationReport rep = verify_generic_cofiber(f, Rational::parse(w_m), r_max);
            return finish(rep, json_path);
        }
        if (*cmd_ret) {
            LoadedMap li = parse_map_file(i_file);
            LoadedMap lj = parse_map_file(j_file);
            TowerMap i = li.tower_map();
            TowerMap j = lj.tower_map();
            LineSpec spec(Rational::parse(w_m), Rational::parse(w_b), r);
            VerificationReport rep = verify_generic_retract(i, j, spec.m, spec);
            return finish(rep, json_path);
        }
        if (*cmd_ghost) {
            Tower t = parse_tower_file(tower_file).to_tower();
            VerificationReport rep = verify_ghost_corollary(t, r, Rational::parse(w_b));
            return finish(rep, json_path);
        }
        if (*cmd_fuzz) {
            if (!is_prime(fuzz_p))
                throw std::invalid_argument("fuzz: --p must be prime");
            return run_fuzz(seed, count, fuzz_p);
        }
    } catch (const std::exception& e) {
        return exit_input_error(e);
    }
    return 2;
}
