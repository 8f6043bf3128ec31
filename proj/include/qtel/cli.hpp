#ifndef QTEL_CLI_HPP
#define QTEL_CLI_HPP

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <qtel/andrews.hpp>
#include <qtel/errors.hpp>
#include <qtel/macmahon.hpp>
#include <qtel/render.hpp>
#include <qtel/telescope.hpp>

// Command-line driver:
//
//   verify (macmahon|andrews) [--n N | --n-max N] [--m M | --m-max M] [--cap D] [--json PATH]
//   check-bijection (macmahon-phi|macmahon-psi|andrews-phi|andrews-involution)
//                   --n N [--m M] --k K [--cap D] [--json PATH]
//   trace andrews --n N --k K [--cap D]
//
// Certificates go to stdout as one JSON object per line, or as a JSON array
// to PATH with a one-line summary per certificate on stdout. Exit status:
// 0 all verified, 1 some certificate failed, 2 usage error.
namespace qtel::cli
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

struct RunConfig {
    std::string subcommand;
    std::string target;
    std::optional<int> n, n_max, m, m_max, k, cap;
    std::optional<std::string> json_path;
};

namespace detail
{

class usage_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline int andrews_default_cap(int n)
{
    return n * n + 15;
}

inline std::pair<int, int> range_of(const std::optional<int> &single, const std::optional<int> &max, int fallback)
{
    if (single) {
        return {*single, *single};
    }
    return {0, max.value_or(fallback)};
}

inline std::vector<Certificate> verify_macmahon_grid(const RunConfig &cfg)
{
    const auto [n_lo, n_hi] = range_of(cfg.n, cfg.n_max, 4);
    const auto [m_lo, m_hi] = range_of(cfg.m, cfg.m_max, 4);
    if (n_lo < 0 || m_lo < 0) {
        throw usage_error("n and m must be nonnegative");
    }
    std::vector<Certificate> certs;
    for (int n = n_lo; n <= n_hi; ++n) {
        for (int m = m_lo; m <= m_hi; ++m) {
            certs.push_back(macmahon::verify_macmahon(n, m));
        }
    }
    return certs;
}

inline std::vector<Certificate> verify_andrews_grid(const RunConfig &cfg)
{
    if (cfg.m || cfg.m_max) {
        throw usage_error("--m/--m-max do not apply to andrews");
    }
    const auto [n_lo, n_hi] = range_of(cfg.n, cfg.n_max, 4);
    if (n_lo < 0) {
        throw usage_error("n must be nonnegative");
    }
    std::vector<Certificate> certs;
    for (int n = n_lo; n <= n_hi; ++n) {
        const int cap = cfg.cap.value_or(andrews_default_cap(n));
        if (cap < n * n) {
            throw usage_error("--cap must be at least n^2 (n = " + std::to_string(n) + ")");
        }
        certs.push_back(andrews::verify_andrews(n, cap, andrews::Which::identity));
        if (n >= 2) {
            certs.push_back(andrews::verify_andrews(n, cap, andrews::Which::rec_fn));
        }
        if (n >= 1) {
            certs.push_back(andrews::verify_andrews(n, cap, andrews::Which::gn));
        }
    }
    return certs;
}

inline std::vector<Certificate> check_bijection(const RunConfig &cfg)
{
    if (!cfg.n || !cfg.k) {
        throw usage_error("check-bijection needs --n and --k");
    }
    const int n = *cfg.n;
    const int k = *cfg.k;
    if (cfg.target == "macmahon-phi") {
        if (!cfg.m || *cfg.m < 0 || n < 0) {
            throw usage_error("macmahon-phi needs --m M with n, m >= 0");
        }
        return {macmahon::check_phi_bijection(n, *cfg.m, k)};
    }
    if (cfg.target == "macmahon-psi") {
        if (n < 0) {
            throw usage_error("macmahon-psi needs n >= 0");
        }
        return {macmahon::check_psi_bijection(n, k)};
    }
    const int cap = cfg.cap.value_or(andrews_default_cap(n));
    if (cap < 0) {
        throw usage_error("--cap must be nonnegative");
    }
    if (cfg.target == "andrews-phi") {
        if (n < 2 || k < 0 || k > n - 2) {
            throw usage_error("andrews-phi needs 0 <= k <= n-2");
        }
        return {andrews::check_phi(n, k, cap)};
    }
    if (n < 2 || (k != n - 1 && k != n)) {
        throw usage_error("andrews-involution needs n >= 2 and k in {n-1, n}");
    }
    return {andrews::check_involution(n, k, cap)};
}

inline void emit(const std::vector<Certificate> &certs, const RunConfig &cfg, std::ostream &out)
{
    if (cfg.json_path) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &c : certs) {
            arr.push_back(c.to_json());
        }
        std::ofstream file(*cfg.json_path);
        if (!file) {
            throw usage_error("cannot open " + *cfg.json_path + " for writing");
        }
        file << arr.dump(2) << "\n";
        for (const auto &c : certs) {
            out << (c.verified() ? "verified " : "FAILED   ") << c.check << " " << c.params.dump() << "\n";
        }
    } else {
        for (const auto &c : certs) {
            out << c.to_json().dump() << "\n";
        }
    }
}

inline void trace_andrews(const RunConfig &cfg, std::ostream &out)
{
    if (!cfg.n || !cfg.k) {
        throw usage_error("trace andrews needs --n and --k");
    }
    const int n = *cfg.n;
    const int k = *cfg.k;
    const bool involution = (k == n - 1 || k == n);
    if (n < 2 || k < 0 || k > n) {
        throw usage_error("trace andrews needs n >= 2 and 0 <= k <= n");
    }
    const int cap = cfg.cap.value_or(andrews_default_cap(n));
    if (cap < 0) {
        throw usage_error("--cap must be nonnegative");
    }
    const auto domain = andrews::domain_slice(n, k, cap);
    out << (involution ? "involution" : "phi") << " n=" << n << " k=" << k << " cap=" << cap << ": "
        << domain.size() << " domain elements\n";
    for (const auto &x : domain) {
        out << "----\n" << render_diagram(x);
        if (involution) {
            const auto step = andrews::involution_step(n, k, x);
            out << "  --" << to_string(step.rule) << "-->\n" << render_diagram(step.value);
            if (step.rule != andrews::InvolutionRule::fixed) {
                const auto back = andrews::involution_step(n, k, step.value);
                out << "  --" << to_string(back.rule) << "--> " << (back.value == x ? "(start)" : "(MISMATCH)")
                    << "\n";
            }
        } else {
            const auto step = andrews::phi_step(n, k, x);
            out << "  --" << to_string(step.rule) << "-->\n" << render_diagram(step.value);
            if (!step.value.is_marked()) {
                out << "  (lands in P(" << n - 1 << "," << k - 1 << "))\n";
            } else if (k >= 1) {
                out << "  (class " << to_string(andrews::classify_codomain(n, k, step.value.object)) << ")\n";
            }
        }
    }
}

} // namespace detail

// Runs one command line (program name excluded) and returns the exit status.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    RunConfig cfg;
    CLI::App app{"Exact verification of combinatorial telescoping constructions", "qtel"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App *sub) {
        auto *n = sub->add_option("--n", cfg.n, "single n");
        auto *n_max = sub->add_option("--n-max", cfg.n_max, "run 0..N");
        n->excludes(n_max);
        auto *m = sub->add_option("--m", cfg.m, "single m");
        auto *m_max = sub->add_option("--m-max", cfg.m_max, "run 0..M");
        m->excludes(m_max);
        sub->add_option("--cap", cfg.cap, "q-degree cap for weight-capped slices");
        sub->add_option("--json", cfg.json_path, "write certificates to PATH");
    };

    auto *verify = app.add_subcommand("verify", "verify identities and recurrences");
    verify->add_option("target", cfg.target)->required()->check(CLI::IsMember({"macmahon", "andrews"}));
    add_common(verify);

    auto *check = app.add_subcommand("check-bijection", "certify one bijection or involution");
    check->add_option("target", cfg.target)
        ->required()
        ->check(CLI::IsMember({"macmahon-phi", "macmahon-psi", "andrews-phi", "andrews-involution"}));
    check->add_option("--n", cfg.n)->required();
    check->add_option("--m", cfg.m);
    check->add_option("--k", cfg.k)->required();
    check->add_option("--cap", cfg.cap);
    check->add_option("--json", cfg.json_path);

    auto *trace = app.add_subcommand("trace", "print every domain element with its image");
    trace->add_option("target", cfg.target)->required()->check(CLI::IsMember({"andrews"}));
    trace->add_option("--n", cfg.n)->required();
    trace->add_option("--k", cfg.k)->required();
    trace->add_option("--cap", cfg.cap);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    try {
        std::vector<Certificate> certs;
        if (verify->parsed()) {
            cfg.subcommand = "verify";
            certs = cfg.target == "macmahon" ? detail::verify_macmahon_grid(cfg) : detail::verify_andrews_grid(cfg);
        } else if (check->parsed()) {
            cfg.subcommand = "check-bijection";
            certs = detail::check_bijection(cfg);
        } else {
            cfg.subcommand = "trace";
            detail::trace_andrews(cfg, out);
            return exit_ok;
        }
        detail::emit(certs, cfg, out);
        return exit_code_for(certs) == 0 ? exit_ok : exit_failed;
    } catch (const detail::usage_error &e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const precondition_error &e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace qtel::cli

#endif
