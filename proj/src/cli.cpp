#include "idealdnf/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "idealdnf/evaluation.hpp"

namespace idealdnf::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<std::string_view> known, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw ConfigError("empty name in list '" + s + "'");
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

// Flag values, applied over the config file.
struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<std::string> out;
    std::optional<std::string> data;
    std::optional<std::string> target;
    std::optional<std::string> positive_label;
    std::vector<std::string> drop;
    std::optional<std::size_t> k;
    std::optional<std::size_t> max_features;
    std::optional<double> tolerance;
    std::optional<std::size_t> tau;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::optional<std::string> which;
    bool json_stdout = false;
    bool timings = false;
};

RunConfig effective_config(const Overrides& o) {
    RunConfig c;
    if (!o.config.empty()) {
        const auto base = fs::path(o.config).parent_path().string();
        c = config_from_json(read_json_file(o.config), base);
    }
    if (o.seed) c.seed = *o.seed;
    c.pipeline.seed = c.seed;
    if (o.threads) c.threads = *o.threads;
    if (o.out) c.out = *o.out;
    if (o.data) c.data.path = *o.data;
    if (o.target) c.data.target = *o.target;
    if (o.positive_label) c.data.positive_label = *o.positive_label;
    for (const auto& d : o.drop) c.data.drop_columns.insert(d);
    if (o.k) c.k = *o.k;
    if (o.max_features) c.pipeline.max_features = *o.max_features;
    if (o.tolerance) c.pipeline.tolerance_points = *o.tolerance;
    if (o.tau) c.bound.tau_size = *o.tau;
    if (o.epsilon) c.bound.epsilon = *o.epsilon;
    if (o.delta) c.bound.delta = *o.delta;
    if (o.which) c.bound_which = *o.which;
    c.pipeline.validate();
    return c;
}

void require_data(const RunConfig& c) {
    if (c.data.path.empty()) throw ConfigError("no dataset given (use --data or a config file)");
    if (c.data.target.empty()) throw ConfigError("no target column given (use --target or a config file)");
}

json run_echo(const RunConfig& c, std::string_view command) {
    return {{"command", command}, {"version", kVersion}, {"seed", c.seed}, {"config", to_json(c)}};
}

int cmd_train(const Overrides& o, std::ostream& out) {
    auto c = effective_config(o);
    require_data(c);
    const auto d = load_dataset(c.data);
    const auto model = train(d, c.pipeline, c.worker_count());
    auto doc = to_json(model);
    doc["run"] = run_echo(c, "train");
    const auto path = c.out.empty() ? std::string("model.json") : c.out;
    write_file(path, doc.dump(2) + "\n");
    out << model.formula_text() << "\n";
    out << "features " << model.feature_set.size() << " (ell " << model.chosen_ell << "), training accuracy "
        << model.training_accuracy << " on " << model.training_rows << " rows\n";
    out << "model written to " << path << "\n";
    return kOk;
}

int cmd_cv(const Overrides& o, std::ostream& out, bool loo) {
    auto c = effective_config(o);
    require_data(c);
    const auto d = load_dataset(c.data);
    const auto report = loo ? leave_one_out(d, c.pipeline, c.worker_count())
                            : k_fold_cv(d, c.k, c.pipeline, c.seed, c.worker_count());
    auto doc = to_json(report, o.timings);
    doc["run"] = run_echo(c, loo ? "loocv" : "cv");
    const auto text = doc.dump(2) + "\n";
    if (!c.out.empty()) write_file(c.out, text);
    if (o.json_stdout)
        out << text;
    else
        out << to_text(report);
    return kOk;
}

int cmd_bound(const Overrides& o, std::ostream& out) {
    auto c = effective_config(o);
    std::uint64_t n = 0;
    if (c.bound_which == "theorem")
        n = theorem_sample_size(c.bound);
    else if (c.bound_which == "corollary")
        n = corollary_sample_size(c.bound);
    else
        throw ConfigError("--which must be 'theorem' or 'corollary', got '" + c.bound_which + "'");
    if (o.json_stdout) {
        json doc = {{"which", c.bound_which},
                    {"tau_size", c.bound.tau_size},
                    {"epsilon", c.bound.epsilon},
                    {"delta", c.bound.delta},
                    {"sample_size", n},
                    {"version", kVersion}};
        out << doc.dump(2) << "\n";
    } else {
        out << n << "\n";
    }
    return kOk;
}

int cmd_simplify(const std::string& formula, const std::string& vocabulary, std::ostream& out) {
    if (vocabulary.empty()) {
        const auto parsed = parse_dnf(formula);
        out << render(simplify(parsed.formula), parsed.names) << "\n";
    } else {
        const auto names = split_list(vocabulary);
        out << render(simplify(parse_dnf(formula, names)), names) << "\n";
    }
    return kOk;
}

int cmd_predict(const std::string& model_path, const std::string& input, const Overrides& o, std::ostream& out) {
    const auto model = model_from_json(read_json_file(model_path));
    const auto rows = read_rows(read_file(input), model.booleanization.source_schema);
    std::ostringstream labels;
    for (const auto& row : rows) labels << (predict(model, row) ? "true" : "false") << "\n";
    if (o.out)
        write_file(*o.out, labels.str());
    else
        out << labels.str();
    return kOk;
}

int cmd_agreement(const std::string& dist_path, std::size_t n, std::size_t trials, const Overrides& o,
                  std::ostream& out) {
    auto c = effective_config(o);
    const auto mu = distribution_from_json(read_json_file(dist_path));
    const double eps = o.epsilon ? *o.epsilon : c.bound.epsilon;
    if (!(eps > 0.0)) throw ConfigError("--epsilon must be positive");
    const double freq = monte_carlo_agreement(mu, n, trials, eps, c.seed, c.worker_count());
    if (o.json_stdout) {
        json doc = {{"n", n}, {"trials", trials}, {"epsilon", eps}, {"seed", c.seed}, {"agreement", freq},
                    {"version", kVersion}};
        out << doc.dump(2) << "\n";
    } else {
        out << freq << "\n";
    }
    return kOk;
}

}  // namespace

unsigned RunConfig::worker_count() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1U : hw;
}

RunConfig config_from_json(const json& j, const std::string& base_dir) {
    RunConfig c;
    reject_unknown(j, {"data", "pipeline", "seed", "k", "bound", "threads", "out"}, "config");
    try {
        if (j.contains("data")) {
            const auto& d = j.at("data");
            reject_unknown(d, {"path", "target", "positive_label", "schema_hints", "missing_tokens", "drop_columns"},
                           "config.data");
            if (d.contains("path")) {
                fs::path p = d.at("path").get<std::string>();
                if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
                c.data.path = p.string();
            }
            if (d.contains("target")) c.data.target = d.at("target").get<std::string>();
            if (d.contains("positive_label")) c.data.positive_label = d.at("positive_label").get<std::string>();
            if (d.contains("schema_hints"))
                for (const auto& [name, kind] : d.at("schema_hints").items())
                    c.data.schema_hints[name] = parse_attribute_kind(kind.get<std::string>());
            if (d.contains("missing_tokens")) c.data.missing_tokens = d.at("missing_tokens").get<std::set<std::string>>();
            if (d.contains("drop_columns")) c.data.drop_columns = d.at("drop_columns").get<std::set<std::string>>();
        }
        if (j.contains("pipeline")) c.pipeline = pipeline_config_from_json(j.at("pipeline"));
        c.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : c.pipeline.seed;
        c.pipeline.seed = c.seed;
        if (j.contains("k")) c.k = j.at("k").get<std::size_t>();
        if (j.contains("bound")) {
            const auto& b = j.at("bound");
            reject_unknown(b, {"tau_size", "epsilon", "delta", "which"}, "config.bound");
            if (b.contains("tau_size")) c.bound.tau_size = b.at("tau_size").get<std::size_t>();
            if (b.contains("epsilon")) c.bound.epsilon = b.at("epsilon").get<double>();
            if (b.contains("delta")) c.bound.delta = b.at("delta").get<double>();
            if (b.contains("which")) c.bound_which = b.at("which").get<std::string>();
        }
        if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

json to_json(const RunConfig& c) {
    json hints = json::object();
    for (const auto& [name, kind] : c.data.schema_hints) hints[name] = std::string(to_string(kind));
    json data = {{"path", c.data.path},
                 {"target", c.data.target},
                 {"schema_hints", hints},
                 {"missing_tokens", c.data.missing_tokens},
                 {"drop_columns", c.data.drop_columns}};
    if (c.data.positive_label) data["positive_label"] = *c.data.positive_label;
    return {{"data", data},
            {"pipeline", idealdnf::to_json(c.pipeline)},
            {"seed", c.seed},
            {"k", c.k},
            {"bound",
             {{"tau_size", c.bound.tau_size},
              {"epsilon", c.bound.epsilon},
              {"delta", c.bound.delta},
              {"which", c.bound_which}}},
            {"threads", c.threads},
            {"out", c.out}};
}

Dataset load_dataset(const DataConfig& c) {
    CsvOptions opts;
    opts.target_name = c.target;
    opts.positive_label = c.positive_label;
    opts.schema_hint = c.schema_hints;
    opts.missing_tokens = c.missing_tokens;
    opts.drop_columns = c.drop_columns;
    return drop_missing(load_csv(c.path, opts), c.missing_tokens);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Learns short DNF classifiers from tabular data", "idealdnf"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Overrides o;
    auto common = [&](CLI::App* s) {
        s->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
        s->add_option("--seed", o.seed, "random seed");
        s->add_option("--threads", o.threads, "worker threads, 0 for all cores");
        s->add_option("--out", o.out, "output path");
    };
    auto data_flags = [&](CLI::App* s) {
        s->add_option("--data", o.data, "CSV dataset");
        s->add_option("--target", o.target, "target column");
        s->add_option("--positive-label", o.positive_label, "target value read as positive");
        s->add_option("--drop", o.drop, "column to ignore (repeatable)");
        s->add_option("--max-features", o.max_features, "largest feature count tried");
        s->add_option("--tolerance", o.tolerance, "accuracy tolerance in percentage points");
    };

    auto* train_cmd = app.add_subcommand("train", "fit a model and write it as JSON");
    common(train_cmd);
    data_flags(train_cmd);

    auto* cv_cmd = app.add_subcommand("cv", "k-fold cross-validation");
    common(cv_cmd);
    data_flags(cv_cmd);
    cv_cmd->add_option("--k", o.k, "number of folds");
    cv_cmd->add_flag("--json", o.json_stdout, "print the JSON report instead of text");
    cv_cmd->add_flag("--timings", o.timings, "include per-fold runtimes in the JSON report");

    auto* loo_cmd = app.add_subcommand("loocv", "leave-one-out cross-validation");
    common(loo_cmd);
    data_flags(loo_cmd);
    loo_cmd->add_flag("--json", o.json_stdout, "print the JSON report instead of text");
    loo_cmd->add_flag("--timings", o.timings, "include per-row runtimes in the JSON report");

    auto* bound_cmd = app.add_subcommand("bound", "sample size for a type vocabulary");
    common(bound_cmd);
    bound_cmd->add_option("--tau", o.tau, "number of propositions");
    bound_cmd->add_option("--epsilon", o.epsilon, "separation");
    bound_cmd->add_option("--delta", o.delta, "failure probability");
    bound_cmd->add_option("--which", o.which, "theorem or corollary");
    bound_cmd->add_flag("--json", o.json_stdout, "print a JSON document");

    std::string formula, vocabulary;
    auto* simplify_cmd = app.add_subcommand("simplify", "minimize a DNF formula");
    common(simplify_cmd);
    simplify_cmd->add_option("formula", formula, "formula such as \"(a & b) | (a & ~b)\"")->required();
    simplify_cmd->add_option("--vocabulary", vocabulary, "comma-separated variable names in order");

    std::string model_path, input_path;
    auto* predict_cmd = app.add_subcommand("predict", "label the rows of a CSV with a trained model");
    common(predict_cmd);
    predict_cmd->add_option("--model", model_path, "model JSON")->required();
    predict_cmd->add_option("--input", input_path, "CSV with the model's predictor columns")->required();

    std::string dist_path;
    std::size_t sample_n = 0, trials = 1000;
    auto* agree_cmd = app.add_subcommand("agreement", "Monte Carlo check of the sample-size guarantee");
    common(agree_cmd);
    agree_cmd->add_option("--distribution", dist_path, "distribution JSON")->required();
    agree_cmd->add_option("--n", sample_n, "sample size")->required();
    agree_cmd->add_option("--trials", trials, "number of samples");
    agree_cmd->add_option("--epsilon", o.epsilon, "separation threshold")->required();
    agree_cmd->add_flag("--json", o.json_stdout, "print a JSON document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (train_cmd->parsed()) return cmd_train(o, out);
        if (cv_cmd->parsed()) return cmd_cv(o, out, false);
        if (loo_cmd->parsed()) return cmd_cv(o, out, true);
        if (bound_cmd->parsed()) return cmd_bound(o, out);
        if (simplify_cmd->parsed()) return cmd_simplify(formula, vocabulary, out);
        if (predict_cmd->parsed()) return cmd_predict(model_path, input_path, o, out);
        if (agree_cmd->parsed()) return cmd_agreement(dist_path, sample_n, trials, o, out);
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsage;
}

}  // namespace idealdnf::cli
