#include <algorithm>
#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "exle/cli.hpp"
#include "exle/errors.hpp"
#include "exle/solver.hpp"
#include "internal.hpp"

namespace exle::cli {

namespace {

using Json = nlohmann::json;

// One flag that may also be supplied by the config file.
struct Binding {
    CLI::Option* option = nullptr;
    std::function<void(const Json&)> assign;
    bool required = false;
};

using BindingTable = std::map<std::string, Binding>;

double json_number(const std::string& key, const Json& v) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

template <typename Int>
Int json_integer(const std::string& key, const Json& v) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw ConfigError("config key '" + key + "' must be an integer");
    }
    return v.get<Int>();
}

std::string json_string(const std::string& key, const Json& v) {
    if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

class Registry {
public:
    explicit Registry(CLI::App* sub) : sub_(sub) {}

    void number(const std::string& name, double& target, const std::string& help, bool required = false) {
        auto* opt = sub_->add_option("--" + name, target, help);
        table_[name] = {opt, [name, &target](const Json& v) { target = json_number(name, v); }, required};
    }

    void optional_number(const std::string& name, std::optional<double>& target, const std::string& help) {
        auto* opt = sub_->add_option("--" + name, target, help);
        table_[name] = {opt, [name, &target](const Json& v) { target = json_number(name, v); }, false};
    }

    template <typename Int>
    void integer(const std::string& name, Int& target, const std::string& help, bool required = false) {
        auto* opt = sub_->add_option("--" + name, target, help);
        table_[name] = {opt, [name, &target](const Json& v) { target = json_integer<Int>(name, v); },
                        required};
    }

    void text(const std::string& name, std::string& target, const std::string& help, bool required = false) {
        auto* opt = sub_->add_option("--" + name, target, help);
        table_[name] = {opt, [name, &target](const Json& v) { target = json_string(name, v); }, required};
    }

    CLI::App* app() const { return sub_; }
    const BindingTable& table() const { return table_; }

private:
    CLI::App* sub_;
    BindingTable table_;
};

std::string normalise_key(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

void merge_config(const Json& doc, const BindingTable& table) {
    for (const auto& [raw_key, value] : doc.items()) {
        const auto key = normalise_key(raw_key);
        const auto it = table.find(key);
        if (it == table.end() || key == "config") {
            throw ConfigError("unknown config key '" + raw_key + "'");
        }
        if (it->second.option->count() == 0) it->second.assign(value);
    }
}

void check_required(const BindingTable& table, const std::optional<Json>& config) {
    for (const auto& [key, b] : table) {
        if (!b.required || b.option->count() > 0) continue;
        bool found = false;
        if (config) {
            for (const auto& item : config->items()) found = found || normalise_key(item.key()) == key;
        }
        if (!found) throw ConfigError("missing required value --" + key);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Regularity thresholds and minimal-solution branches of a Lane-Emden system"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    std::string config_path;

    RootsOptions roots;
    Registry roots_reg(app.add_subcommand("roots", "Largest roots and dimension thresholds for one (p, theta)"));
    roots_reg.number("p", roots.p, "exponent p", true);
    roots_reg.number("theta", roots.theta, "exponent theta", true);
    roots_reg.number("tol", roots.tol, "root bracket width");

    ThresholdsOptions thresholds;
    std::string grid_text;
    Registry thr_reg(app.add_subcommand("thresholds", "Threshold table over a (p, theta) grid, p <= theta"));
    thr_reg.text("grid", grid_text, "pmin:pmax:step", true);
    thr_reg.number("tol", thresholds.tol, "root bracket width");
    thr_reg.text("out", thresholds.out, "output CSV (default stdout)");

    ContinueOptions cont;
    Registry cont_reg(app.add_subcommand("continue", "Follow the minimal branch along gamma = sigma lambda"));
    cont_reg.number("p", cont.p, "exponent p", true);
    cont_reg.number("theta", cont.theta, "exponent theta", true);
    cont_reg.number("sigma", cont.sigma, "ray slope gamma/lambda");
    cont_reg.integer("dim", cont.dim, "space dimension N");
    cont_reg.integer("nodes", cont.nodes, "radial intervals M");
    cont_reg.number("tol", cont.tol, "fixed-point iteration tolerance");
    cont_reg.number("bracket-tol", cont.bracket_tol, "relative fold bracket width");
    cont_reg.integer("max-steps", cont.max_steps, "continuation step budget");
    cont_reg.optional_number("s", cont.s, "energy exponent (default (p+1+s0)/2)");
    cont_reg.text("out", cont.out, "branch CSV (default stdout)");
    cont_reg.text("summary", cont.summary, "summary JSON (default <out>.summary.json, or stderr)");

    VerifyOptions verify;
    Registry ver_reg(app.add_subcommand("verify", "Check the polynomial and exponent identities"));
    ver_reg.number("p", verify.p, "exponent p", true);
    ver_reg.number("theta", verify.theta, "exponent theta", true);
    ver_reg.integer("samples", verify.samples, "random samples per identity");
    ver_reg.integer("seed", verify.seed, "sampler seed");
    ver_reg.number("tamper-l", verify.tamper_l, "");
    ver_reg.app()->get_option("--tamper-l")->group("");

    PartialOptions partial;
    Registry par_reg(app.add_subcommand("partial", "Hausdorff dimension bound of the singular set"));
    par_reg.number("p", partial.p, "exponent p", true);
    par_reg.number("theta", partial.theta, "exponent theta", true);
    par_reg.integer("dim", partial.dim, "space dimension N", true);
    par_reg.number("tol", partial.tol, "root bracket width");

    const std::vector<Registry*> registries{&roots_reg, &thr_reg, &cont_reg, &ver_reg, &par_reg};
    for (auto* reg : registries) reg->app()->add_option("--config", config_path, "JSON file of flag values");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kSuccess : kDomainError;
    }

    try {
        const Registry* active = nullptr;
        for (auto* reg : registries) {
            if (reg->app()->parsed()) active = reg;
        }
        std::optional<Json> config;
        if (!config_path.empty()) {
            config = detail::load_config(config_path);
            merge_config(*config, active->table());
        }
        check_required(active->table(), config);

        if (active == &roots_reg) return cmd_roots(roots, out, err);
        if (active == &thr_reg) {
            thresholds.grid = GridSpec::parse(grid_text);
            return cmd_thresholds(thresholds, out, err);
        }
        if (active == &cont_reg) return cmd_continue(cont, out, err);
        if (active == &ver_reg) return cmd_verify(verify, out, err);
        return cmd_partial(partial, out, err);
    } catch (const IoError& ex) {
        err << "error: " << ex.what() << '\n';
        return kIoError;
    } catch (const BudgetError& ex) {
        err << "error: " << ex.what() << '\n';
        return kBudgetExhausted;
    } catch (const DomainError& ex) {
        err << "error: " << ex.what() << '\n';
        return kDomainError;
    } catch (const ConfigError& ex) {
        err << "error: " << ex.what() << '\n';
        return kDomainError;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kVerificationFailure;
    }
}

}  // namespace exle::cli
