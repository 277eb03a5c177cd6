// cdlab: Redei symbols, sqrt(-3)-isogeny descent for cubic twists, and the
// sum/distribution experiment harnesses, behind one command-line surface.
//
// Exit codes: 0 ok; 2 parse/invalid input; 3 unsupported input (generic
// twist); 4 I/O error; 5 budget exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cdlab/cache.hpp"
#include "cdlab/config.hpp"
#include "cdlab/errors.hpp"
#include "cdlab/redei.hpp"
#include "cdlab/selmer.hpp"
#include "cdlab/stats.hpp"
#include "cdlab/trilinear.hpp"

namespace {

using cdlab::Config;

int cmd_redei(std::int64_t a, std::int64_t b, std::int64_t c) {
    using namespace cdlab::redei;
    RedeiResult r = redei_symbol({a, b, c});
    if (!r.defined)
        std::printf("undefined\n");
    else
        std::printf("%d\n", r.value);
    return 0;
}

std::string report_json(const cdlab::selmer::DescentReport& r) {
    cdlab::cache::Record rec{1,    r.params.d, r.params.n, r.dim_mu3, r.dim_hom,
                             r.tam_exponent, r.w,        r.r3_lower, r.r3_upper};
    return cdlab::cache::format_record(rec);
}

int cmd_selmer(std::int64_t d, std::int64_t n, const std::string& format, const Config& cfg) {
    using namespace cdlab::selmer;
    DescentOptions opt;
    opt.point_search_height = cfg.point_search_height;
    opt.hensel_precision_extra = cfg.hensel_precision_extra;
    DescentReport r = descent_report(d, n, opt);
    if (format == "json") {
        std::printf("%s\n", report_json(r).c_str());
    } else {
        std::printf("d          %lld\n", (long long)d);
        std::printf("n          %lld\n", (long long)n);
        std::printf("dim_mu3    %d\n", r.dim_mu3);
        std::printf("dim_hom    %d\n", r.dim_hom);
        std::printf("tam_exp    %d\n", r.tam_exponent);
        std::printf("w          %d\n", r.w);
        std::printf("r3_lo      %d\n", r.r3_lower);
        std::printf("r3_hi      %d\n", r.r3_upper);
        std::printf("parity_ok  %s\n", r.parity_ok ? "true" : "false");
    }
    return 0;
}

void write_file_or_throw(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open " + path);
    out << text;
    if (!out) throw std::ios_base::failure("write failed on " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubic-twist descent laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "flat key = value configuration file");

    // redei
    auto* sc_redei = app.add_subcommand("redei", "evaluate the triple symbol [a,b,c]");
    std::int64_t ra = 0, rb = 0, rc = 0;
    sc_redei->add_option("a", ra)->required();
    sc_redei->add_option("b", rb)->required();
    sc_redei->add_option("c", rc)->required();

    // selmer
    auto* sc_selmer = app.add_subcommand("selmer", "descent report for y^2 = x^3 + d n^2");
    std::int64_t sd = 0, sn = 0;
    std::string sformat = "text";
    sc_selmer->add_option("--d", sd)->required();
    sc_selmer->add_option("--n", sn)->required();
    sc_selmer->add_option("--format", sformat)->check(CLI::IsMember({"json", "text"}));

    // sweep
    auto* sc_sweep = app.add_subcommand("sweep", "descent sweep over 1 <= n <= n-max");
    std::int64_t wd = 0, wmax = 0;
    std::string wout, wcache;
    bool wrecompute = false;
    sc_sweep->add_option("--d", wd)->required();
    sc_sweep->add_option("--n-max", wmax)->required();
    sc_sweep->add_option("--out", wout)->required();
    sc_sweep->add_option("--cache", wcache);
    sc_sweep->add_flag("--recompute", wrecompute);

    // trilinear
    auto* sc_tri = app.add_subcommand("trilinear", "character-sum experiments");
    double th = 0, th1 = 0, th2 = 0, th3 = 0;
    std::string tmode = "ones", tout;
    std::uint64_t tseed = 1;
    bool tbilinear = false;
    std::vector<double> tdecay;
    sc_tri->add_option("--h", th, "cube box H1 = H2 = H3 = H");
    sc_tri->add_option("--h1", th1);
    sc_tri->add_option("--h2", th2);
    sc_tri->add_option("--h3", th3);
    sc_tri->add_option("--mode", tmode)->check(CLI::IsMember({"ones", "random_unit"}));
    sc_tri->add_option("--seed", tseed);
    sc_tri->add_option("--out", tout)->required();
    sc_tri->add_flag("--bilinear", tbilinear, "Jacobi-kernel bilinear sum instead of the triple sum");
    sc_tri->add_option("--decay", tdecay, "list of H values for a decay run");

    // stats
    auto* sc_stats = app.add_subcommand("stats", "distribution-law tables");
    std::string stable = "densities", sout;
    int srmax = 10, st = 4;
    std::int64_t strials = 100000;
    std::uint64_t sseed = 1;
    sc_stats->add_option("--table", stable)->check(CLI::IsMember({"densities", "palt", "sample"}));
    sc_stats->add_option("--rmax", srmax);
    sc_stats->add_option("--t", st);
    sc_stats->add_option("--trials", strials);
    sc_stats->add_option("--seed", sseed);
    sc_stats->add_option("--out", sout);

    // fixtures (regenerates the oracle corpus; slow reference path)
    auto* sc_fix = app.add_subcommand("fixtures", "regenerate the oracle fixture corpus");
    std::string fout = "fixtures/redei_oracle.jsonl";
    sc_fix->add_option("--out", fout);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Config cfg;
    try {
        if (!config_path.empty()) cfg = cdlab::load_config(config_path);
        cdlab::apply_env_overrides(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    try {
        if (sc_redei->parsed()) {
            return cmd_redei(ra, rb, rc);
        }
        if (sc_selmer->parsed()) {
            return cmd_selmer(sd, sn, sformat, cfg);
        }
        if (sc_sweep->parsed()) {
            cdlab::stats::SweepOptions opt;
            opt.threads = cfg.effective_threads();
            opt.cache_path = wcache.empty() ? cfg.cache_path : wcache;
            opt.recompute = wrecompute;
            opt.seed = cfg.seed;
            opt.descent.point_search_height = cfg.point_search_height;
            opt.descent.hensel_precision_extra = cfg.hensel_precision_extra;
            auto res = cdlab::stats::sweep(wd, wmax, opt);
            write_file_or_throw(wout, res.histogram_csv);
            std::printf("wrote %s (mean dim over the blow-up side: %.4f)\n", wout.c_str(), res.mean_dim_mu3);
            return 0;
        }
        if (sc_tri->parsed()) {
            using namespace cdlab::trilinear;
            Mode m = tmode == "ones" ? Mode::ones : Mode::random_unit;
            std::vector<SumReport> reports;
            if (!tdecay.empty()) {
                reports = decay_report(tdecay, m, tseed);
            } else if (tbilinear) {
                double H1 = th1 > 0 ? th1 : th, H2 = th2 > 0 ? th2 : th;
                reports.push_back(bilinear_jacobi_sum(H1, H2, m, tseed));
            } else {
                double H1 = th1 > 0 ? th1 : th, H2 = th2 > 0 ? th2 : th, H3 = th3 > 0 ? th3 : th;
                reports.push_back(trilinear_sum(H1, H2, H3, m, tseed));
            }
            write_file_or_throw(tout, to_csv(reports));
            return 0;
        }
        if (sc_stats->parsed()) {
            using namespace cdlab::stats;
            std::ostringstream os;
            char buf[160];
            if (stable == "densities") {
                os << "r,density\n";
                for (int r = 0; r <= srmax; ++r) {
                    std::snprintf(buf, sizeof buf, "%d,%.6f", r, predicted_density(r));
                    os << buf << "\n";
                }
            } else if (stable == "palt") {
                os << "r,t,p\n";
                for (int r = st % 2; r <= st; r += 2) {
                    mpq_class p = p_alt_kernel(r, st);
                    std::snprintf(buf, sizeof buf, "%d,%d,%s", r, st, p.get_str().c_str());
                    os << buf << "\n";
                }
            } else {
                auto counts = sample_alt_kernel(st, strials, sseed);
                os << "# seed=" << sseed << " version=1\n";
                os << "r,count,fraction\n";
                for (int r = 0; r < (int)counts.size(); ++r) {
                    if (!counts[r]) continue;
                    std::snprintf(buf, sizeof buf, "%d,%lld,%.9g", r, (long long)counts[r],
                                  (double)counts[r] / (double)strials);
                    os << buf << "\n";
                }
            }
            if (sout.empty())
                std::fputs(os.str().c_str(), stdout);
            else
                write_file_or_throw(sout, os.str());
            return 0;
        }
        if (sc_fix->parsed()) {
            using namespace cdlab::redei;
            auto recs = generate_fixture_corpus();
            write_fixtures(fout, recs);
            std::printf("wrote %zu records to %s\n", recs.size(), fout.c_str());
            return 0;
        }
    } catch (const cdlab::unsupported_error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 3;
    } catch (const cdlab::resource_limit_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    } catch (const std::ios_base::failure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
