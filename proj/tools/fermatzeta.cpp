// fermatzeta: zeta functions of monomial deformations of Fermat hypersurfaces.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "fermatzeta/error.hpp"
#include "fermatzeta/report.hpp"
#include "fermatzeta/zeta.hpp"

using namespace fermatzeta;
using nlohmann::json;

namespace {

struct Args {
    std::vector<std::uint32_t> weights, deformation;
    std::uint32_t degree = 0;
    std::uint32_t p = 0, r = 1;
    FqElem lambda = 0;
    unsigned precision = 0, buffer = 2;
    std::size_t order = 0;
    std::size_t extensions = 0;
    std::string format = "json";
    unsigned jobs = 1;
    std::string cache_dir;
    bool telemetry = false;
};

void emit_error(const std::string& kind, const std::string& name, const std::string& message) {
    std::cout << json{{"error", {{"kind", kind}, {"name", name}, {"message", message}}}}.dump(2) << "\n";
}

const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::gate: return "gate";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::verification: return "verification";
    }
    return "invalid_argument";
}

FamilyDescriptor family(const Args& a) {
    if (a.weights.empty() || a.degree == 0 || a.deformation.empty())
        throw Error(ErrorKind::invalid_argument, "MissingFamily", "--weights, --degree and --deformation are required");
    return FamilyDescriptor::make(a.weights, a.degree, a.deformation);
}

FieldDescriptor field(const Args& a) {
    if (a.p == 0) throw Error(ErrorKind::invalid_argument, "MissingField", "--p is required");
    if (!is_prime(a.p)) throw Error(ErrorKind::invalid_argument, "InvalidField", "p must be prime");
    const auto F = field_make(a.p, a.r);
    if (a.lambda >= F.q) throw Error(ErrorKind::invalid_argument, "InvalidLambda", "lambda must encode an element of F_q");
    return F;
}

std::optional<CountCache> cache(const Args& a) {
    if (a.cache_dir.empty()) return std::nullopt;
    return CountCache(a.cache_dir);
}

/// Stored in the cache directory when one is given, otherwise recomputed.
Calibration calibration(const Args& a) {
    if (!a.cache_dir.empty()) {
        const auto path = std::filesystem::path(a.cache_dir) / "calibration.json";
        if (std::filesystem::exists(path)) {
            std::ifstream in(path);
            return Calibration::from_json(json::parse(in));
        }
        const Calibration cal = default_calibration();
        std::filesystem::create_directories(a.cache_dir);
        std::ofstream(path) << cal.to_json().dump(2) << "\n";
        return cal;
    }
    return default_calibration();
}

ZetaOptions zeta_options(const Args& a) {
    ZetaOptions o;
    o.precision = a.precision;
    o.buffer = a.buffer;
    o.order = a.order;
    o.jobs = a.jobs;
    return o;
}

/// Enough extensions to pin the numerator down, as far as the evaluation budget allows.
std::size_t default_extensions(const FamilyDescriptor& f, std::uint64_t q) {
    const std::size_t D = enumerate_admissible(f).size();
    const std::size_t want = std::max<std::size_t>(1, (D + 1) / 2);
    const CountOptions budget;
    std::size_t s = 1;
    double evals = 1;
    for (unsigned i = 0; i < f.n(); ++i) evals *= double(q);
    double next = evals;
    while (s < want) {
        for (unsigned i = 0; i < f.n(); ++i) next *= double(q);
        if (next > double(budget.max_evaluations)) break;
        ++s;
    }
    return s;
}

std::vector<PointCount> counts(const Args& a, const FamilyDescriptor& f, const FieldDescriptor& F) {
    auto c = cache(a);
    CountOptions opt;
    opt.jobs = a.jobs;
    const std::size_t terms = a.extensions ? a.extensions : default_extensions(f, F.q);
    std::vector<PointCount> out;
    for (std::size_t s = 1; s <= terms; ++s) out.push_back(cached_count(c ? &*c : nullptr, f, F, a.lambda, s, opt));
    return out;
}

void print(const Args& a, const json& j, const std::string& text, const std::string& latex) {
    if (a.format == "json") std::cout << j.dump(2) << "\n";
    else if (a.format == "latex") std::cout << latex;
    else std::cout << text;
}

int run_zeta(const Args& a, bool check) {
    const auto f = family(a);
    const auto F = field(a);
    auto report = compute_zeta(f, F, a.lambda, calibration(a), zeta_options(a));
    if (check) verify(report, counts(a, f, F));
    const json j = report_to_json(report, a.telemetry);
    print(a, j, report_to_text(j), report_to_latex(j));
    return j.value("verdict", "MATCH") == "MATCH" ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zeta functions of monomial deformations of Fermat hypersurfaces"};
    app.require_subcommand(1);
    Args a;

    auto add_family = [&](CLI::App* c) {
        c->add_option("--weights", a.weights, "weights w_0,...,w_n")->delimiter(',');
        c->add_option("--degree", a.degree, "degree d");
        c->add_option("--deformation", a.deformation, "deformation exponents a_0,...,a_n")->delimiter(',');
        c->add_option("--format", a.format, "output format")->check(CLI::IsMember({"json", "latex", "text"}));
    };
    auto add_field = [&](CLI::App* c) {
        c->add_option("--p", a.p, "characteristic");
        c->add_option("--r", a.r, "q = p^r");
        c->add_option("--lambda", a.lambda, "parameter, as the integer encoding of its F_p coordinates");
        c->add_option("--jobs", a.jobs, "worker threads");
        c->add_option("--cache-dir", a.cache_dir, "directory for count tables and the calibration record");
    };
    auto add_pipeline = [&](CLI::App* c) {
        c->add_option("--precision", a.precision, "p-adic precision N (0: what rounding needs)");
        c->add_option("--series-order", a.order, "starting series order L (0: automatic)");
        c->add_option("--tail-buffer", a.buffer, "extra digits the series tail must vanish to");
        c->add_flag("--telemetry", a.telemetry, "include N, L, K and tail valuations per block");
    };

    auto* classes = app.add_subcommand("classes", "admissible types, strong and weak classes, factor shapes");
    add_family(classes);
    auto* pf = app.add_subcommand("pf", "hypergeometric entries of the deformation matrix");
    add_family(pf);
    auto* zeta = app.add_subcommand("zeta", "zeta function from the p-adic pipeline");
    add_family(zeta);
    add_field(zeta);
    add_pipeline(zeta);
    auto* count = app.add_subcommand("count", "brute-force counts and the numerator they determine");
    add_family(count);
    add_field(count);
    count->add_option("--extensions", a.extensions, "count over F_{q^s} for s = 1..this");
    auto* ver = app.add_subcommand("verify", "zeta against brute-force counts");
    add_family(ver);
    add_field(ver);
    add_pipeline(ver);
    ver->add_option("--extensions", a.extensions, "count over F_{q^s} for s = 1..this");
    auto* cal = app.add_subcommand("calibrate", "resolve and store the Fermat Frobenius normalization");
    cal->add_option("--cache-dir", a.cache_dir, "directory for the calibration record");
    cal->add_option("--format", a.format, "output format")->check(CLI::IsMember({"json", "latex", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("invalid_argument", "UsageError", e.what());
        return 1;
    }

    try {
        if (*classes) {
            const json j = classes_to_json(family(a));
            print(a, j, classes_to_text(j), classes_to_text(j));
        } else if (*pf) {
            const auto f = family(a);
            print(a, pf_to_json(f), pf_to_text(f), pf_to_latex(f));
        } else if (*zeta) {
            return run_zeta(a, false);
        } else if (*ver) {
            return run_zeta(a, true);
        } else if (*count) {
            const auto f = family(a);
            const auto F = field(a);
            const json j = counts_to_json(f, F, a.lambda, counts(a, f, F));
            print(a, j, j.dump(2) + "\n", j.dump(2) + "\n");
        } else if (*cal) {
            if (!a.cache_dir.empty()) std::filesystem::remove(std::filesystem::path(a.cache_dir) / "calibration.json");
            const json j = calibration(a).to_json();
            print(a, j, "nu = " + j["nu"].get<std::string>() + ", sign = " + std::to_string(j["sign"].get<int>()) +
                            ", orientation = " + j["orientation"].get<std::string>() + "\n",
                  j.dump(2) + "\n");
        }
    } catch (const Error& e) {
        emit_error(kind_name(e.kind()), e.name(), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        emit_error("invalid_argument", "Failure", e.what());
        return 1;
    }
    return 0;
}
