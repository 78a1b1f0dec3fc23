#include "cli_app.hpp"

#include "qident/qident.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>
#include <thread>
#include <vector>

namespace qident::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs task(i) for i in [0, n) on a small worker pool; results land in caller-owned slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task) {
    const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string fixed_digits(const BigFloat& x, int digits) { return x.to_string(digits); }

struct Options {
    mpfr_prec_t precision = BigFloat::default_precision;

    // verify
    bool all = false;
    std::vector<std::string> ids;
    std::size_t order = 500;
    bool json = false;
    std::string registry_file;

    // expand / fit
    std::string expr;
    std::size_t expand_order = 20;
    bool csv = false;
    std::vector<std::uint64_t> periods;
    std::size_t fit_order = 200;

    // limits
    std::string limit_id;
    std::vector<std::string> qs{"0.9", "0.99", "0.999", "0.9999"};

    // constants
    bool check = false;
    double tol = 1e-10;

    // partition
    std::vector<std::uint64_t> congruence;
    std::uint64_t count = 200;
};

Expr parse_or_usage(const std::string& text) {
    try {
        return dsl::parse(text);
    } catch (const dsl::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\n  " + text + "\n  " + std::string(e.position(), ' ') + "^");
    }
}

Series eval_or_usage(const Expr& e, std::size_t order) {
    try {
        return dsl::eval_expr(e, order);
    } catch (const EvalError& ex) {
        throw UsageError(std::string(ex.what()) + " (offset " + std::to_string(ex.span().begin) + ")");
    }
}

int cmd_verify(const Options& o, std::ostream& out) {
    if (o.order == 0) throw UsageError("--order must be >= 1");
    std::vector<IdentityEntry> registry = builtin_registry();
    std::vector<std::optional<std::size_t>> entry_orders(registry.size());
    if (!o.registry_file.empty()) {
        for (auto& u : load_registry_file(o.registry_file)) {
            if (lookup(registry, u.entry.id)) throw UsageError("registry file redefines builtin id '" + u.entry.id + "'");
            registry.push_back(std::move(u.entry));
            entry_orders.push_back(u.order);
        }
    }

    std::vector<std::size_t> chosen;
    if (o.all) {
        for (std::size_t i = 0; i < registry.size(); ++i) chosen.push_back(i);
    } else {
        if (o.ids.empty()) throw UsageError("verify needs --all or --id");
        std::set<std::size_t> seen;
        for (const auto& name : o.ids) {
            bool found = false;
            for (std::size_t i = 0; i < registry.size(); ++i) {
                if (registry[i].id != name && registry[i].family != name) continue;
                found = true;
                if (seen.insert(i).second) chosen.push_back(i);
            }
            if (!found) throw UsageError("unknown identity '" + name + "'");
        }
    }

    std::vector<std::optional<VerifyResult>> results(chosen.size());
    parallel_for(chosen.size(), [&](std::size_t k) {
        const std::size_t i = chosen[k];
        results[k] = verify(registry[i], entry_orders[i].value_or(o.order));
    });

    int code = exit_ok;
    Json arr = Json::array();
    for (const auto& r : results) {
        if (!r->verified()) code = exit_failed;
        if (o.json) {
            arr.push_back(verify_to_json(*r));
            continue;
        }
        out << r->id << ": ";
        if (r->verified())
            out << "verified to order " << r->order << '\n';
        else
            out << "MISMATCH at q^" << r->mismatch->index << " (lhs " << to_string(r->mismatch->lhs) << ", rhs "
                << to_string(r->mismatch->rhs) << ")\n";
    }
    if (o.json) out << arr.dump(2) << '\n';
    return code;
}

int cmd_expand(const Options& o, std::ostream& out) {
    if (o.expand_order == 0) throw UsageError("--order must be >= 1");
    const Series s = eval_or_usage(parse_or_usage(o.expr), o.expand_order);
    if (o.json) {
        Json j;
        j["order"] = s.order();
        j["coefficients"] = series_to_json(s);
        out << j.dump(2) << '\n';
    } else if (o.csv) {
        out << series_to_csv(s);
    } else {
        bool first = true;
        for (const auto& c : s.coefficients()) {
            out << (first ? "" : ",") << to_string(c);
            first = false;
        }
        out << '\n';
    }
    return exit_ok;
}

int cmd_fit(const Options& o, std::ostream& out) {
    if (o.fit_order < 2) throw UsageError("--order must be >= 2");
    if (o.periods.empty()) throw UsageError("--periods must list at least one period");
    const Series target = eval_or_usage(parse_or_usage(o.expr), o.fit_order);
    FitResult r;
    try {
        r = fit_eta_quotient(target, std::span<const std::uint64_t>(o.periods), o.fit_order);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (o.json) {
        out << fit_to_json(r, o.fit_order).dump(2) << '\n';
    } else if (r.ok()) {
        out << format_exponents(*r.exponents) << '\n';
    } else {
        out << "infeasible: " << to_string(r.infeasible->reason);
        if (r.infeasible->index) out << " at q^" << *r.infeasible->index;
        out << '\n';
    }
    return r.ok() ? exit_ok : exit_failed;
}

int cmd_limits(const Options& o, std::ostream& out) {
    const auto targets = builtin_limit_targets();
    const auto it = std::find_if(targets.begin(), targets.end(), [&](const auto& t) { return t.id == o.limit_id; });
    if (it == targets.end()) throw UsageError("no limit data for '" + o.limit_id + "'");
    std::vector<BigFloat> qs;
    for (const auto& s : o.qs) {
        try {
            BigFloat q = BigFloat::parse(s, o.precision);
            if (!(q > 0.0) || !(q < 1.0)) throw UsageError("q must lie in (0, 1): " + s);
            qs.push_back(std::move(q));
        } catch (const std::invalid_argument&) {
            throw UsageError("not a number: '" + s + "'");
        }
    }
    const auto rows = limit_check(it->expr, it->meta, qs);
    if (o.json) {
        Json j;
        j["id"] = it->id;
        j["weight"] = it->meta.weight;
        j["limit"] = it->meta.constant.to_string();
        Json arr = Json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
            arr.push_back({{"q", o.qs[i]},
                           {"scaled", fixed_digits(rows[i].scaled, 20)},
                           {"target", fixed_digits(rows[i].target, 20)},
                           {"relative_error", fixed_digits(rows[i].relative_error, 6)}});
        j["rows"] = arr;
        out << j.dump(2) << '\n';
        return exit_ok;
    }
    out << it->id << ": (1-q)^" << it->meta.weight << " * value -> " << it->meta.constant.to_string() << '\n';
    out << std::left << std::setw(12) << "q" << std::setw(28) << "scaled" << std::setw(28) << "target"
        << "rel_error\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        out << std::setw(12) << o.qs[i] << std::setw(28) << fixed_digits(rows[i].scaled, 20) << std::setw(28)
            << fixed_digits(rows[i].target, 20) << fixed_digits(rows[i].relative_error, 6) << '\n';
    return exit_ok;
}

int cmd_constants(const Options& o, std::ostream& out) {
    if (!(o.tol > 0)) throw UsageError("--tol must be positive");
    const auto constants = builtin_constants();
    std::vector<std::optional<ConstantCheck>> checks(constants.size());
    parallel_for(constants.size(), [&](std::size_t i) { checks[i] = check_constant(constants[i], o.tol, o.precision); });

    int code = exit_ok;
    Json arr = Json::array();
    for (const auto& c : checks) {
        if (!c->passed) code = exit_failed;
        const std::string detected = c->detected_multiplier ? to_string(*c->detected_multiplier) : "none";
        if (o.json) {
            arr.push_back({{"id", c->entry.id},
                           {"character", c->entry.top},
                           {"s", c->entry.s},
                           {"closed_form", c->entry.closed_form.to_string()},
                           {"computed", fixed_digits(c->computed, 30)},
                           {"abs_error", fixed_digits(c->abs_error, 6)},
                           {"detected_multiplier", detected},
                           {"passed", c->passed}});
            continue;
        }
        out << std::left << std::setw(10) << c->entry.id << "L(" << c->entry.s << ", (" << c->entry.top << "/.)) = "
            << fixed_digits(c->computed, 25) << "  vs " << c->entry.closed_form.to_string()
            << "  err " << fixed_digits(c->abs_error, 3) << "  multiplier " << detected;
        if (o.check) out << "  " << (c->passed ? "PASS" : "FAIL");
        out << '\n';
    }
    if (o.json) out << arr.dump(2) << '\n';
    return o.check ? code : exit_ok;
}

int cmd_partition(const Options& o, std::ostream& out) {
    if (o.congruence.size() != 2) throw UsageError("--congruence takes m,a");
    const std::uint64_t m = o.congruence[0];
    const std::uint64_t a = o.congruence[1];
    CongruenceResult r;
    try {
        r = check_partition_congruence(m, a, o.count);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const std::string claim = "p(" + std::to_string(m) + "n+" + std::to_string(a) + ") = 0 mod " + std::to_string(m);
    if (o.json) {
        Json j;
        j["modulus"] = m;
        j["residue"] = a;
        j["count"] = o.count;
        j["holds"] = r.holds();
        if (r.counterexample) {
            j["counterexample_n"] = *r.counterexample;
            j["partition"] = partition(m * *r.counterexample + a).get_str();
        }
        out << j.dump(2) << '\n';
    } else if (r.holds()) {
        out << claim << " for n = 0.." << o.count - 1 << '\n';
    } else {
        const auto n = *r.counterexample;
        out << claim << " fails at n = " << n << ": p(" << m * n + a << ") = " << partition(m * n + a).get_str()
            << '\n';
    }
    return r.holds() ? exit_ok : exit_failed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact verification of q-series identities", "qident"};
    app.require_subcommand(1);
    app.add_option("--precision-bits", o.precision, "MPFR precision for numeric commands")
        ->envname("QIDENT_PRECISION_BITS")
        ->check(CLI::Range(64, 1 << 20));

    auto* verify_cmd = app.add_subcommand("verify", "Compare both sides of registry identities");
    auto* all_flag = verify_cmd->add_flag("--all", o.all, "Every builtin and loaded identity");
    verify_cmd->add_option("--id", o.ids, "Identity ids or family names")->delimiter(',')->excludes(all_flag);
    verify_cmd->add_option("--order", o.order, "Truncation order N");
    verify_cmd->add_flag("--json", o.json);
    verify_cmd->add_option("--registry", o.registry_file, "Extra identities (JSON, format 1)");

    auto* expand_cmd = app.add_subcommand("expand", "Print coefficients c_0..c_{N-1} of an expression");
    expand_cmd->add_option("EXPR", o.expr)->required();
    expand_cmd->add_option("--order", o.expand_order);
    auto* ej = expand_cmd->add_flag("--json", o.json);
    expand_cmd->add_flag("--csv", o.csv)->excludes(ej);

    auto* fit_cmd = app.add_subcommand("fit", "Find eta-quotient exponents matching an expression");
    fit_cmd->add_option("EXPR", o.expr)->required();
    fit_cmd->add_option("--periods", o.periods)->delimiter(',')->required();
    fit_cmd->add_option("--order", o.fit_order);
    fit_cmd->add_flag("--json", o.json);

    auto* limits_cmd = app.add_subcommand("limits", "Tabulate (1-q)^w * value as q -> 1");
    limits_cmd->add_option("--id", o.limit_id)->required();
    limits_cmd->add_option("--q", o.qs)->delimiter(',');
    limits_cmd->add_flag("--json", o.json);

    auto* constants_cmd = app.add_subcommand("constants", "Dirichlet L-values against closed forms");
    constants_cmd->add_flag("--check", o.check, "Exit 1 if any constant misses the tolerance");
    constants_cmd->add_option("--tol", o.tol);
    constants_cmd->add_flag("--json", o.json);

    auto* partition_cmd = app.add_subcommand("partition", "Check p(mn+a) = 0 mod m");
    partition_cmd->add_option("--congruence", o.congruence)->delimiter(',')->expected(2)->required();
    partition_cmd->add_option("--count", o.count);
    partition_cmd->add_flag("--json", o.json);

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*verify_cmd) return cmd_verify(o, out);
        if (*expand_cmd) return cmd_expand(o, out);
        if (*fit_cmd) return cmd_fit(o, out);
        if (*limits_cmd) return cmd_limits(o, out);
        if (*constants_cmd) return cmd_constants(o, out);
        if (*partition_cmd) return cmd_partition(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const RegistryFileError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace qident::cli
