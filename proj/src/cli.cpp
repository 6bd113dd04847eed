#include "debx/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"

#include "debx/extremal.hpp"
#include "debx/hb.hpp"
#include "debx/interpolation.hpp"
#include "debx/lp_laplace.hpp"
#include "debx/report.hpp"

namespace debx::cli {

namespace {

using Complex = std::complex<double>;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

const std::vector<std::string>& sample_funcs() {
    static const std::vector<std::string> names = {
        "E",      "A",      "B",      "K-diag",  "weight", "g",      "g1",     "g2",
        "h",      "M-plus", "M-minus", "T-plus", "T-minus", "S-plus", "S-minus"};
    return names;
}

/// Build the x -> value callback for `sample`, constructing only as much of
/// the pipeline as the requested function needs.
std::function<double(double)> make_sampler(const std::string& func, double a) {
    if (func == "E" || func == "A" || func == "B" || func == "K-diag" || func == "weight") {
        const hb::HBParams p = hb::make_params(a);
        if (func == "E") return [p](double x) { return std::abs(hb::eval_e(p, Complex(x, 0.0))); };
        if (func == "A") return [p](double x) { return hb::eval_a(p, Complex(x, 0.0)).real(); };
        if (func == "B") return [p](double x) { return hb::eval_b(p, Complex(x, 0.0)).real(); };
        if (func == "K-diag") return [p](double x) { return hb::kernel_diag(p, x); };
        return [p](double x) { return hb::weight(p, x); };
    }
    if (func == "g" || func == "g1" || func == "g2") {
        const hb::HBParams p = hb::make_params(a);
        const lp::LPDescriptor d = ext::make_b_squared_descriptor(p);
        const double half = lp::default_g_halfwidth(d);
        auto tables = std::make_shared<const lp::GTables>(
            lp::build_g_tables(d, -half, half, 2561, QuadratureSpec{}));
        const int which = func == "g" ? 0 : (func == "g1" ? 1 : 2);
        return [tables, which](double t) {
            if (which == 0) return tables->g(t);
            if (which == 1) return tables->g1(t);
            return tables->g2(t);
        };
    }
    const bool heaviside = func == "S-plus" || func == "S-minus";
    const auto kind = heaviside ? ext::PairKind::heaviside : ext::PairKind::de_branges;
    auto pair = std::make_shared<const ext::ExtremalPair>(
        ext::build_extremal(a, kind, 1.0, QuadratureSpec{}));
    if (func == "h") {
        return [pair](double w) { return pair->h->h(w); };
    }
    const auto side = func == "M-plus" || func == "T-plus" || func == "S-plus"
                          ? ext::Side::plus
                          : ext::Side::minus;
    return [pair, side](double x) {
        return ext::eval_pair(*pair, side, Complex(x, 0.0)).real();
    };
}

struct SinkGuard {
    std::ofstream file;
    std::ostream* stream = nullptr;
};

/// Route output to stdout ("-") or a file; returns false if the file cannot
/// be opened.
bool open_sink(const std::string& path, std::ostream& out, SinkGuard& sink) {
    if (path == "-") {
        sink.stream = &out;
        return true;
    }
    sink.file.open(path, std::ios::binary);
    if (!sink.file) return false;
    sink.stream = &sink.file;
    return true;
}

int run_sample(const std::string& func, double a, double from, double to, double step,
               const std::string& out_path, const std::string& format, std::ostream& out,
               std::ostream& err) {
    if (!(step > 0.0)) throw DomainError("sample: --step must be positive");
    if (to < from) throw DomainError("sample: --to must not be below --from");
    SinkGuard sink;
    if (!open_sink(out_path, out, sink)) {
        err << "error: cannot open output file '" << out_path << "'\n";
        return 3;
    }
    const auto f = make_sampler(func, a);
    const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;

    if (format == "csv") {
        *sink.stream << "x,value\n";
        for (std::size_t i = 0; i < n; ++i) {
            double x = from + static_cast<double>(i) * step;
            if (std::abs(x) < 1e-9 * step) x = 0.0;
            *sink.stream << fmt17(x) << ',' << fmt17(f(x)) << '\n';
        }
    } else {
        nlohmann::ordered_json root;
        root["func"] = func;
        root["a"] = a;
        auto samples = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < n; ++i) {
            double x = from + static_cast<double>(i) * step;
            if (std::abs(x) < 1e-9 * step) x = 0.0;
            samples.push_back({x, f(x)});
        }
        root["samples"] = std::move(samples);
        *sink.stream << root.dump(2) << '\n';
    }
    return sink.stream->good() ? 0 : 3;
}

int run_optimal(double a, const std::string& kind_str, double delta, bool do_verify,
                double verify_x, std::ostream& out) {
    const auto kind =
        kind_str == "heaviside" ? ext::PairKind::heaviside : ext::PairKind::de_branges;
    double closed = 0.0;
    if (kind == ext::PairKind::heaviside) {
        closed = ext::closed_form_heaviside_optimal(a, delta);
    } else {
        if (delta != 1.0) {
            throw DomainError("optimal: de-branges measure defined for delta = 1");
        }
        const hb::HBParams p = hb::make_params(a);
        closed = 1.0 / (a * a * hb::kernel_diag(p, 0.0));
    }
    out << "closed_form " << fmt17(closed) << '\n';
    if (!do_verify) return 0;

    const auto pair = ext::build_extremal(a, kind, delta, QuadratureSpec{});
    const auto qv = ext::quadrature_optimal(pair, verify_x, QuadratureSpec{});
    const double rel = std::abs(qv.value - closed) / std::abs(closed);
    out << "quadrature " << fmt17(qv.value) << '\n';
    out << "tail_bound " << fmt17(qv.tail_bound) << '\n';
    out << "rel_err " << fmt17(rel) << '\n';
    const bool pass = rel <= 5e-3;
    out << "verdict " << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? 0 : 1;
}

void append(VerificationReport& report, CheckEntry entry) {
    report.entries.push_back(std::move(entry));
}

void append(VerificationReport& report, std::vector<CheckEntry> entries) {
    for (auto& e : entries) report.entries.push_back(std::move(e));
}

void kernel_suite(double a, VerificationReport& report) {
    const hb::HBParams p = hb::make_params(a);
    const std::vector<Complex> zs = {{0.3, 0.2}, {-1.7, 1.3}, {2.2, -0.4}, {0.0, 0.05}};

    double worst_decomp = 0.0;
    for (const Complex& z : zs) {
        const Complex e = hb::eval_e(p, z);
        const Complex split = hb::eval_a(p, z) - Complex(0.0, 1.0) * hb::eval_b(p, z);
        worst_decomp = std::max(worst_decomp, std::abs(e - split) / std::abs(e));
    }
    report.add_bound_check("kernel_e_decomposition", worst_decomp, 1e-12);

    double worst_herm = 0.0;
    for (std::size_t i = 0; i + 1 < zs.size(); ++i) {
        const Complex k_wz = hb::kernel(p, zs[i], zs[i + 1]);
        const Complex k_zw = hb::kernel(p, zs[i + 1], zs[i]);
        worst_herm = std::max(worst_herm,
                              std::abs(k_wz - std::conj(k_zw)) / std::max(1.0, std::abs(k_wz)));
    }
    report.add_bound_check("kernel_hermitian", worst_herm, 1e-12);

    double worst_weight = 0.0;
    for (double x : {0.0, 0.37, 2.5, 17.3}) {
        const double direct = std::norm(hb::eval_e(p, Complex(x, 0.0)));
        worst_weight = std::max(worst_weight, std::abs(hb::weight(p, x) * direct - 1.0));
    }
    report.add_bound_check("kernel_weight_identity", worst_weight, 1e-12);

    append(report, hb::verify_poisson_identity(p, 0.3, 0.7));
    append(report, hb::verify_poisson_identity(p, 1.1, 0.4));

    const double near = hb::condition_iv_proxy(p, 10.0);
    const double far = hb::condition_iv_proxy(p, 100.0);
    report.add_target_check("kernel_condition_iv_ratio", far / near, 10.0, 2.0);
}

void laplace_suite(const ext::ExtremalPair& pair, VerificationReport& report) {
    const auto& d = pair.descriptor;
    const auto& tables = *pair.tables;
    const QuadratureSpec spec{};
    append(report, lp::verify_g_shape(tables));
    append(report, lp::one_over_f_check(d, tables, spec));
    append(report, lp::moment_check(d, tables, 1, spec));
    append(report, lp::moment_check(d, tables, 2, spec));
    append(report, lp::contour_independence_check(d, spec));
    append(report, lp::cosine_transform_check(d, tables, 0.5, spec));
    append(report, lp::cosine_transform_check(d, tables, 1.0, spec));
    append(report, lp::sine_transform_check(d, tables, 1.0, 0.0, spec));
    append(report, lp::sine_transform_check(d, tables, 1.0, 0.7, spec));
}

void interp_suite(const ext::ExtremalPair& pair, VerificationReport& report) {
    const auto& d = pair.descriptor;
    const auto& tables = *pair.tables;
    const auto& H = *pair.h;
    const double a_eff = pair.params.a;
    const QuadratureSpec spec{};
    append(report, interp::verify_h_shape(H));
    append(report, interp::h_prime0_identity_check(d, H, spec));
    append(report, interp::h_second_reflection_check(d, tables, a_eff, 0.4, spec));
    append(report, interp::h_representation_check(H, -0.8, spec));
    append(report, interp::h_representation_check(H, 1.3, spec));
    append(report, interp::a_seam_check(d, tables, H, a_eff, spec));
    append(report, interp::a_boundedness_check(d, tables, H, a_eff, spec));

    std::vector<double> xs;
    xs.reserve(2001);
    for (int i = 0; i <= 2000; ++i) xs.push_back(-30.0 + 0.03 * i);
    append(report, interp::check_sign(pair.lower, xs, spec));
    append(report, interp::check_sign(pair.upper, xs, spec));
    const auto zeros = hb::zeros_of_b(pair.params, 32);
    append(report, interp::check_growth_bound(pair.lower, xs, zeros, spec));
    append(report, interp::check_growth_bound(pair.upper, xs, zeros, spec));
}

void extremal_suite(const ext::ExtremalPair& pair, double window_x,
                    VerificationReport& report) {
    const QuadratureSpec spec{};
    append(report, ext::gap_localization_check(pair, 10));
    append(report, ext::gap_at_origin_check(pair));
    append(report, ext::interpolation_nodes_check(pair, 10));

    const auto heav = ext::with_kind(pair, ext::PairKind::heaviside);
    append(report, ext::verify_heaviside_constraints(heav));

    const double closed = ext::closed_form_optimal(heav);
    const auto qv = ext::quadrature_optimal(heav, window_x, spec);
    report.add_target_check("optimal_quadrature", qv.value, closed, 5e-3 * std::abs(closed));

    const double k00 = hb::kernel_diag(pair.params, 0.0);
    const double a_eff = pair.params.a;
    report.add_target_check("optimal_product", closed * a_eff * a_eff * k00, 1.0, 1e-12);

    append(report, ext::verify_sampling_identity(pair, 0.0, 40, spec));
    append(report, ext::verify_sampling_identity(pair, 0.3, 40, spec));
    append(report, ext::scaled_asymptotics_check(pair.a, {0.01, 100.0}));
}

int run_verify(double a, const std::string& suite, double window_x,
               const std::vector<std::string>& tol_overrides, std::ostream& out) {
    std::map<std::string, double> overrides;
    for (const std::string& item : tol_overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw DomainError("verify: --tol expects name=value, got '" + item + "'");
        }
        overrides[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }

    VerificationReport report;
    report.metadata["a"] = fmt_short(a);
    report.metadata["suite"] = suite;
    report.metadata["X"] = fmt_short(window_x);

    const bool all = suite == "all";
    if (all || suite == "kernel") kernel_suite(a, report);
    if (all || suite == "laplace" || suite == "interp" || suite == "extremal") {
        const auto pair = ext::build_extremal(a, ext::PairKind::de_branges, 1.0,
                                              QuadratureSpec{});
        if (all || suite == "laplace") laplace_suite(pair, report);
        if (all || suite == "interp") interp_suite(pair, report);
        if (all || suite == "extremal") extremal_suite(pair, window_x, report);
    }
    if (all || suite == "isometry") append(report, ext::verify_isometry(a, QuadratureSpec{}));

    for (auto& entry : report.entries) {
        const auto it = overrides.find(entry.check_name);
        if (it == overrides.end()) continue;
        entry.tol = it->second;
        entry.pass = entry.abs_err <= entry.tol;
    }
    report.finalize();
    out << report.to_json();
    return report.overall_pass ? 0 : 1;
}

int run_sweep(double a_min, double a_max, int steps, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
    if (!(a_min > 0.0)) throw DomainError("sweep: --a-min must be positive");
    if (a_max < a_min) throw DomainError("sweep: --a-max must not be below --a-min");
    if (steps < 2) throw DomainError("sweep: --steps must be at least 2");
    SinkGuard sink;
    if (!open_sink(out_path, out, sink)) {
        err << "error: cannot open output file '" << out_path << "'\n";
        return 3;
    }
    *sink.stream << "a,closed_form_heaviside,K_diag_at_0,product_check\n";
    for (int i = 0; i < steps; ++i) {
        const double a =
            a_min + (a_max - a_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
        const hb::HBParams p = hb::make_params(a);
        const double k00 = hb::kernel_diag(p, 0.0);
        const double closed = ext::closed_form_heaviside_optimal(a, 1.0);
        *sink.stream << fmt17(a) << ',' << fmt17(closed) << ',' << fmt17(k00) << ','
                     << fmt17(closed * a * a * k00) << '\n';
    }
    return sink.stream->good() ? 0 : 3;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"extremal one-sided approximations in a de Branges space"};
    app.name("debx");
    app.require_subcommand(1);

    double opt_a = 1.0, opt_delta = 1.0, opt_verify_x = 500.0;
    std::string opt_kind = "heaviside";
    auto* optimal =
        app.add_subcommand("optimal", "Closed-form optimal gap, optionally cross-checked");
    optimal->add_option("--a", opt_a, "vanishing parameter")->capture_default_str();
    optimal->add_option("--kind", opt_kind, "target of the pair")
        ->check(CLI::IsMember({"heaviside", "de-branges"}))
        ->capture_default_str();
    optimal->add_option("--delta", opt_delta, "type scale")->capture_default_str();
    auto* verify_flag =
        optimal->add_option("--verify", opt_verify_x, "quadrature window half-width X");

    std::string smp_func = "E", smp_out = "-", smp_format = "csv";
    double smp_a = 1.0, smp_from = -5.0, smp_to = 5.0, smp_step = 0.1;
    auto* sample = app.add_subcommand("sample", "Tabulate a pipeline function on a grid");
    sample->add_option("--func", smp_func, "function to sample")
        ->check(CLI::IsMember(sample_funcs()))
        ->capture_default_str();
    sample->add_option("--a", smp_a, "vanishing parameter")->capture_default_str();
    sample->add_option("--from", smp_from, "grid start")->capture_default_str();
    sample->add_option("--to", smp_to, "grid end")->capture_default_str();
    sample->add_option("--step", smp_step, "grid step")->capture_default_str();
    sample->add_option("--out", smp_out, "output path, - for stdout")->capture_default_str();
    sample->add_option("--format", smp_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    double ver_a = 1.0, ver_x = 500.0;
    std::string ver_suite = "all";
    std::vector<std::string> ver_tols;
    auto* verify = app.add_subcommand("verify", "Run a verification suite, JSON report");
    verify->add_option("--a", ver_a, "vanishing parameter")->capture_default_str();
    verify->add_option("--suite", ver_suite, "which checks to run")
        ->check(CLI::IsMember({"all", "kernel", "laplace", "interp", "extremal", "isometry"}))
        ->capture_default_str();
    verify->add_option("--X", ver_x, "quadrature window half-width")->capture_default_str();
    verify->add_option("--tol", ver_tols, "override a tolerance, name=value (repeatable)");

    double sw_min = 0.25, sw_max = 4.0;
    int sw_steps = 16;
    std::string sw_out = "-";
    auto* sweep = app.add_subcommand("sweep", "CSV sweep of closed forms over a");
    sweep->add_option("--a-min", sw_min, "first a")->capture_default_str();
    sweep->add_option("--a-max", sw_max, "last a")->capture_default_str();
    sweep->add_option("--steps", sw_steps, "row count")->capture_default_str();
    sweep->add_option("--out", sw_out, "output path, - for stdout")->capture_default_str();

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("debx");
        for (const auto& s : args) argv.push_back(s.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (optimal->parsed()) {
            return run_optimal(opt_a, opt_kind, opt_delta, verify_flag->count() > 0,
                               opt_verify_x, out);
        }
        if (sample->parsed()) {
            return run_sample(smp_func, smp_a, smp_from, smp_to, smp_step, smp_out, smp_format,
                              out, err);
        }
        if (verify->parsed()) return run_verify(ver_a, ver_suite, ver_x, ver_tols, out);
        return run_sweep(sw_min, sw_max, sw_steps, sw_out, out, err);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        app.exit(e, out, err);
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace debx::cli
