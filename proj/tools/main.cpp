#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "isom4d/cli.hpp"

namespace {

using isom4d::RunConfig;

std::uint64_t env_default_seed() {
  if (const char* s = std::getenv("ISOM4D_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
      throw std::invalid_argument("ISOM4D_SEED must be an unsigned integer");
    }
  }
  return isom4d::kDefaultSeed;
}

std::map<std::string, isom4d::Rational> parse_params(const std::string& spec) {
  std::map<std::string, isom4d::Rational> out;
  std::size_t start = 0;
  while (start < spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    const std::string item = spec.substr(start, end - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--param expects k=v pairs, got '" + item + "'");
    out[item.substr(0, eq)] = isom4d::Rational::from_string(item.substr(eq + 1));
    start = end + 1;
  }
  return out;
}

isom4d::SolWeights parse_weights(const std::string& spec) {
  std::vector<isom4d::Rational> w;
  std::size_t start = 0;
  while (start <= spec.size() && w.size() < 4) {
    std::size_t end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    w.push_back(isom4d::Rational::from_string(spec.substr(start, end - start)));
    if (end == spec.size()) break;
    start = end + 1;
  }
  if (w.size() != 3) throw std::invalid_argument("--weights expects w1,w2,w3");
  isom4d::SolWeights out{w[0], w[1], w[2]};
  out.validate();
  return out;
}

// Shared flag bundle; config-file values fill anything the command line left
// untouched.
struct Flags {
  std::string group, params, weights, format, out, config, from;
  int case_id = -1;
  int samples = -1;
  int trials = -1;
  long long seed = -1;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--param", f.params, "metric parameters k=v[,k=v...], rationals like 3/2");
  cmd->add_option("--samples", f.samples, "sample count for randomized checks");
  cmd->add_option("--trials", f.trials, "trial count for completeness evidence");
  cmd->add_option("--seed", f.seed, "seed for every randomized draw")->each([&f](const std::string&) {
    f.seed_set = true;
  });
  cmd->add_option("--format", f.format, "output format: table, json or csv");
  cmd->add_option("--out", f.out, "write the report to this file instead of stdout");
  cmd->add_option("--weights", f.weights, "solmn4 weight triple w1,w2,w3 (distinct, sum 0)");
  cmd->add_option("--config", f.config, "JSON file with the same keys as the flags");
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  cfg.seed = env_default_seed();
  cfg.case_id = 1;

  // config file first, explicit flags afterwards
  nlohmann::ordered_json doc;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw std::invalid_argument("cannot open config file '" + f.config + "'");
    doc = nlohmann::ordered_json::parse(in);
  }
  auto cfg_str = [&](const char* key, std::string& dst) {
    if (doc.contains(key)) dst = doc.at(key).get<std::string>();
  };
  std::string group = "", params = "", weights = "", format = "", out = "", from = "";
  cfg_str("group", group);
  cfg_str("param", params);
  cfg_str("weights", weights);
  cfg_str("format", format);
  cfg_str("out", out);
  cfg_str("from", from);
  if (doc.contains("case")) cfg.case_id = doc.at("case").get<int>();
  if (doc.contains("samples")) cfg.samples = doc.at("samples").get<int>();
  if (doc.contains("trials")) cfg.trials = doc.at("trials").get<int>();
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("params"))
    for (const auto& [k, v] : doc.at("params").items())
      cfg.params[k] = isom4d::Rational::from_string(v.get<std::string>());

  if (!f.group.empty()) group = f.group;
  if (!f.params.empty()) params = f.params;
  if (!f.weights.empty()) weights = f.weights;
  if (!f.format.empty()) format = f.format;
  if (!f.out.empty()) out = f.out;
  if (!f.from.empty()) from = f.from;
  if (f.case_id >= 0) cfg.case_id = f.case_id;
  if (f.samples >= 0) cfg.samples = f.samples;
  if (f.trials >= 0) cfg.trials = f.trials;
  if (f.seed_set) cfg.seed = static_cast<std::uint64_t>(f.seed);

  if (!group.empty()) {
    const auto g = isom4d::parse_group(group);
    if (!g) throw std::invalid_argument("unknown group '" + group + "'");
    cfg.group = g;
  }
  if (!params.empty()) cfg.params = parse_params(params);
  if (!weights.empty()) cfg.weights = parse_weights(weights);
  if (!format.empty()) cfg.format = format;
  cfg.out_path = out;
  cfg.catalog_path = from;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact isometry-group computations for the simply connected unimodular "
               "4-dimensional Lie groups"};
  app.require_subcommand(1);

  Flags catalog_flags, stab_flags, repro_flags;

  CLI::App* catalog = app.add_subcommand("catalog", "catalog inspection and verification");
  catalog->require_subcommand(1);
  CLI::App* verify = catalog->add_subcommand("verify", "run the catalog consistency checks");
  add_common(verify, catalog_flags);
  verify->add_option("--from", catalog_flags.from, "verify algebras loaded from a catalog JSON file");
  CLI::App* exp = catalog->add_subcommand("export", "write the catalog as JSON");
  add_common(exp, catalog_flags);

  CLI::App* stab = app.add_subcommand("stabilizer", "metric stabilizer of one (group, case)");
  add_common(stab, stab_flags);
  stab->add_option("--group", stab_flags.group, "group name: nil3xr nil4 solmn4 sol3xr sol04 sol0p4 sol14")
      ->required();
  stab->add_option("--case", stab_flags.case_id, "metric case (0 for free-form parameters)");

  CLI::App* repro = app.add_subcommand("reproduce",
                                       "recompute the full stabilizer table and compare with the "
                                       "expected results");
  add_common(repro, repro_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    isom4d::CommandResult result;
    RunConfig cfg;
    if (verify->parsed()) {
      cfg = build_config(catalog_flags);
      result = isom4d::cmd_catalog_verify(cfg);
    } else if (exp->parsed()) {
      cfg = build_config(catalog_flags);
      result = isom4d::cmd_catalog_export(cfg);
    } else if (stab->parsed()) {
      cfg = build_config(stab_flags);
      result = isom4d::cmd_stabilizer(cfg);
    } else {
      cfg = build_config(repro_flags);
      result = isom4d::cmd_reproduce(cfg);
    }
    isom4d::deliver(cfg, result.rendered);
    return result.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
