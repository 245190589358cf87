#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sectorlab/catalog_store.hpp"
#include "sectorlab/errors.hpp"
#include "sectorlab/free_moments.hpp"
#include "sectorlab/json_io.hpp"
#include "sectorlab/matrix_ensembles.hpp"
#include "sectorlab/sectors.hpp"
#include "sectorlab/spectral_measures.hpp"
#include "sectorlab/word_algebra.hpp"

namespace {

using namespace sectorlab;

enum class Format { json, csv };

struct CommonOptions {
  std::string format;  // empty: the command's default
  std::string out;
  unsigned threads = 1;
};

struct EsdOptions {
  std::string word = "X";
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t bins = 64;
  std::string hist;
};

struct FreeLawOptions {
  std::string word = "X";
  std::size_t dim = 256;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  unsigned depth = kDefaultMomentDepth;
};

struct EnumerateOptions {
  std::size_t max_degree = 0;
  std::vector<std::string> words{"X", "X+Y", "X*Y+Y*X"};
};

struct SectorOptions {
  std::string word = "X";
  std::string target;
  std::string cover_id;
  std::string catalog;
  double epsilon = 0.1;
  std::string metric = "levy";
  std::vector<std::size_t> dims;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

struct ClassifyOptions {
  std::vector<std::string> laws;
  std::vector<std::string> words{"X"};
  std::string catalog;
  std::string metric = "levy";
};

Format parse_format(CommonOptions& common, Format fallback) {
  if (common.format.empty()) common.format = fallback == Format::json ? "json" : "csv";
  const std::string& text = common.format;
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  throw ValidationError("unknown output format '" + text + "' (expected json or csv)");
}

Json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(std::string("cannot open ") + what + " '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::exception& e) {
    throw ValidationError(std::string(what) + " '" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

NcPolynomial self_adjoint_word(const std::string& text) {
  NcPolynomial w = parse_polynomial(text);
  if (!w.self_adjoint()) {
    throw ValidationError("word '" + text + "' is not self-adjoint; use a symmetrized form such as X*Y+Y*X");
  }
  return w;
}

void echo_config(const std::string& command, Json config, const CommonOptions& common) {
  config["command"] = command;
  config["format"] = common.format;
  config["out"] = common.out.empty() ? Json(nullptr) : Json(common.out);
  config["threads"] = common.threads;
  std::cerr << "config: " << config.dump() << '\n';
}

Json rational_strings(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

int run_esd(const EsdOptions& o, CommonOptions& common) {
  const Format format = parse_format(common, Format::json);
  echo_config("esd",
              {{"word", o.word}, {"dim", o.dim}, {"seed", o.seed}, {"stream", o.stream},
               {"bins", o.bins}, {"hist", o.hist.empty() ? Json(nullptr) : Json(o.hist)}},
              common);
  const NcPolynomial w = self_adjoint_word(o.word);
  const SeedSpec seed{o.seed, o.stream};
  const auto [a, b] = sample_sphere_pair(o.dim, seed);
  const DiscreteMeasure mu = esd(evaluate_word(w, a.matrix(), b.matrix()));

  double lo = mu.min_atom(), hi = mu.max_atom();
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const auto bins = histogram(mu, o.bins, lo, hi);
  std::ostringstream hist_csv;
  write_histogram_csv(hist_csv, bins);

  if (!common.out.empty()) write_text_file(common.out, measure_to_json(mu).dump(2) + "\n");
  if (!o.hist.empty()) write_text_file(o.hist, hist_csv.str());

  if (format == Format::csv) {
    std::cout << hist_csv.str();
    return 0;
  }
  const bool single_generator = w == NcPolynomial::generator(Generator::X) ||
                                w == NcPolynomial::generator(Generator::Y);
  Json moments = Json::array();
  for (unsigned k = 1; k <= 4; ++k) moments.push_back(mu.moment(k));
  Json summary{{"word", to_string(w)},
               {"dim", o.dim},
               {"seed", seed_to_json(seed)},
               {"atoms", mu.size()},
               {"min", mu.min_atom()},
               {"max", mu.max_atom()},
               {"moments", std::move(moments)},
               {"ks_to_semicircle",
                single_generator ? Json(ks_distance_to_semicircle(mu)) : Json(nullptr)}};
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int run_freelaw(const FreeLawOptions& o, CommonOptions& common) {
  const Format format = parse_format(common, Format::json);
  echo_config("freelaw",
              {{"word", o.word}, {"dim", o.dim}, {"trials", o.trials}, {"seed", o.seed},
               {"stream", o.stream}, {"depth", o.depth}},
              common);
  const NcPolynomial w = self_adjoint_word(o.word);
  const SeedSpec seed{o.seed, o.stream};
  const FreeLawSummary summary = free_law_reference(w, o.dim, o.trials, seed, common.threads, o.depth);
  if (!common.out.empty()) write_text_file(common.out, free_law_to_json(summary).dump(2) + "\n");

  std::vector<double> mc;
  for (unsigned k = 1; k <= o.depth; ++k) mc.push_back(summary.mc_measure.moment(k));
  if (format == Format::csv) {
    std::cout << "k,exact,monte_carlo,abs_error\n";
    for (unsigned k = 1; k <= o.depth; ++k) {
      std::cout << k << ',' << summary.moments[k - 1].str() << ',' << format_double(mc[k - 1]) << ','
                << format_double(summary.moment_errors[k - 1]) << '\n';
    }
    return 0;
  }
  Json result{{"word", to_string(w)},
              {"moments", rational_strings(summary.moments)},
              {"mc_moments", mc},
              {"moment_errors", summary.moment_errors},
              {"moment_tolerance", summary.moment_tolerance},
              {"moments_consistent", summary.moments_consistent},
              {"mc_dim", summary.mc_dim},
              {"mc_trials", summary.mc_trials},
              {"seed", seed_to_json(seed)}};
  std::cout << result.dump(2) << '\n';
  return 0;
}

int run_enumerate(const EnumerateOptions& o, CommonOptions& common) {
  const Format format = parse_format(common, Format::json);
  echo_config("enumerate", {{"max_degree", o.max_degree}, {"words", o.words}}, common);
  std::vector<NcPolynomial> words;
  for (const auto& text : o.words) words.push_back(self_adjoint_word(text));
  const Catalog catalog = build_catalog(o.max_degree, words, common.threads);
  if (!common.out.empty()) write_text_file(common.out, serialize_catalog(catalog));

  struct Counts {
    std::size_t transitive = 0, galois = 0;
  };
  std::vector<Counts> counts(o.max_degree + 1);
  for (const auto& e : catalog.entries) {
    ++counts[e.cover.degree()].transitive;
    if (e.cover.galois) ++counts[e.cover.degree()].galois;
  }
  if (format == Format::csv) {
    std::cout << "degree,transitive,galois\n";
    for (std::size_t d = 1; d <= o.max_degree; ++d) {
      std::cout << d << ',' << counts[d].transitive << ',' << counts[d].galois << '\n';
    }
    return 0;
  }
  Json degrees = Json::array();
  for (std::size_t d = 1; d <= o.max_degree; ++d) {
    degrees.push_back({{"degree", d}, {"transitive", counts[d].transitive}, {"galois", counts[d].galois}});
  }
  std::cout << Json{{"max_degree", o.max_degree},
                    {"degrees", std::move(degrees)},
                    {"entries", catalog.entries.size()},
                    {"word_list", catalog.word_list}}
                   .dump(2)
            << '\n';
  return 0;
}

DiscreteMeasure sector_target(const SectorOptions& o, const NcPolynomial& w) {
  if (o.target.empty() == o.cover_id.empty()) {
    throw ValidationError("sector needs exactly one of --target or --cover-id");
  }
  if (!o.target.empty()) return extract_measure(read_json_file(o.target, "target"));
  if (o.catalog.empty()) throw ValidationError("--cover-id requires --catalog");
  const Catalog catalog = load_catalog(o.catalog);
  const CatalogEntry* entry = catalog.find(o.cover_id);
  if (entry == nullptr) throw ValidationError("cover '" + o.cover_id + "' is not in the catalog");
  const auto it = entry->laws.find(to_string(w));
  if (it == entry->laws.end()) {
    throw ValidationError("cover '" + o.cover_id + "' has no law for word '" + to_string(w) + "'");
  }
  return it->second.law;
}

int run_sector(SectorOptions o, CommonOptions& common) {
  const Format format = parse_format(common, Format::csv);
  if (o.dims.empty()) o.dims.push_back(128);
  echo_config("sector",
              {{"word", o.word},
               {"target", o.target.empty() ? Json(nullptr) : Json(o.target)},
               {"cover_id", o.cover_id.empty() ? Json(nullptr) : Json(o.cover_id)},
               {"catalog", o.catalog.empty() ? Json(nullptr) : Json(o.catalog)},
               {"epsilon", o.epsilon},
               {"metric", o.metric},
               {"dims", o.dims},
               {"trials", o.trials},
               {"seed", o.seed},
               {"stream", o.stream}},
              common);
  const NcPolynomial w = self_adjoint_word(o.word);
  SectorSpec spec{w, sector_target(o, w), o.epsilon, parse_metric(o.metric)};
  spec.validate();
  const SeedSpec seed{o.seed, o.stream};
  std::vector<SectorProbeResult> probes;
  if (o.dims.size() == 1) {
    probes.push_back(sector_probability(spec, o.dims.front(), o.trials, seed, common.threads));
  } else {
    probes = rate_curve(spec, o.dims, o.trials, seed, common.threads);
  }

  std::ostringstream text;
  if (format == Format::csv) {
    write_probe_csv(text, probes);
  } else {
    Json rows = Json::array();
    for (const auto& p : probes) {
      rows.push_back({{"m", p.dim},
                      {"trials", p.trials},
                      {"hits", p.hits},
                      {"p_hat", p.p_hat},
                      {"rate_hat", p.rate_hat},
                      {"rate_is_lower_bound", p.rate_is_lower_bound}});
    }
    text << Json{{"probes", std::move(rows)}, {"nonincreasing", is_nonincreasing(probes)}}.dump(2) << '\n';
  }
  if (!common.out.empty()) write_text_file(common.out, text.str());
  std::cout << text.str();
  return 0;
}

int run_classify(const ClassifyOptions& o, CommonOptions& common) {
  if (parse_format(common, Format::json) != Format::json) throw ValidationError("classify only writes json");
  echo_config("classify",
              {{"laws", o.laws}, {"words", o.words}, {"catalog", o.catalog}, {"metric", o.metric}},
              common);
  if (o.laws.size() != o.words.size()) {
    throw ValidationError("classify needs one --law per --word (" + std::to_string(o.laws.size()) +
                          " laws, " + std::to_string(o.words.size()) + " words)");
  }
  const MetricChoice metric = parse_metric(o.metric);
  const Catalog catalog = load_catalog(o.catalog);
  if (catalog.entries.empty()) throw ValidationError("catalog '" + o.catalog + "' has no entries");

  std::vector<NcPolynomial> words;
  std::vector<DiscreteMeasure> observed;
  for (std::size_t i = 0; i < o.words.size(); ++i) {
    words.push_back(self_adjoint_word(o.words[i]));
    observed.push_back(extract_measure(read_json_file(o.laws[i], "law")));
  }
  ClassificationResult result;
  if (words.size() == 1) {
    const auto laws = catalog.laws_for(words.front());
    result = classify_sector(observed.front(), words.front(), laws, metric);
  } else {
    const auto profiles = catalog.profiles(words);
    result = classify_profile(observed, profiles, metric);
  }
  Json out = classification_to_json(result);
  out["metric"] = to_string(metric);
  out["words"] = Json::array();
  for (const auto& w : words) out["words"].push_back(to_string(w));
  const std::string text = out.dump(2) + "\n";
  if (!common.out.empty()) write_text_file(common.out, text);
  std::cout << text;
  return 0;
}

void add_common(CLI::App* app, CommonOptions& common) {
  app->add_option("--format", common.format, "Output format: json or csv");
  app->add_option("--out", common.out, "Write the machine-readable result to this file");
  app->add_option("--threads", common.threads, "Worker threads (0 = hardware concurrency)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sectorlab: microstate sectors, free laws and Belyi quotient spectra"};
  app.require_subcommand(1);

  CommonOptions common;
  EsdOptions esd_opts;
  FreeLawOptions freelaw_opts;
  EnumerateOptions enumerate_opts;
  SectorOptions sector_opts;
  ClassifyOptions classify_opts;

  auto* esd_cmd = app.add_subcommand("esd", "Spectral distribution of a word on one sphere pair");
  esd_cmd->add_option("--word", esd_opts.word, "Self-adjoint word in X, Y")->capture_default_str();
  esd_cmd->add_option("--dim", esd_opts.dim, "Matrix dimension")->required();
  esd_cmd->add_option("--seed", esd_opts.seed, "Master seed")->required();
  esd_cmd->add_option("--stream", esd_opts.stream, "Stream id")->capture_default_str();
  esd_cmd->add_option("--bins", esd_opts.bins, "Histogram bins")->capture_default_str();
  esd_cmd->add_option("--hist", esd_opts.hist, "Write the histogram CSV to this file");
  add_common(esd_cmd, common);

  auto* freelaw_cmd = app.add_subcommand("freelaw", "Exact free moments with a Monte Carlo reference");
  freelaw_cmd->add_option("--word", freelaw_opts.word, "Self-adjoint word in X, Y")->capture_default_str();
  freelaw_cmd->add_option("--dim", freelaw_opts.dim, "Matrix dimension")->capture_default_str();
  freelaw_cmd->add_option("--trials", freelaw_opts.trials, "Sphere pairs to pool")->capture_default_str();
  freelaw_cmd->add_option("--seed", freelaw_opts.seed, "Master seed")->required();
  freelaw_cmd->add_option("--stream", freelaw_opts.stream, "Stream id")->capture_default_str();
  freelaw_cmd->add_option("--depth", freelaw_opts.depth, "Number of moments")->capture_default_str();
  add_common(freelaw_cmd, common);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate Belyi covers and build a catalog");
  enumerate_cmd->add_option("--max-degree", enumerate_opts.max_degree, "Largest degree (1..7)")->required();
  enumerate_cmd->add_option("--word", enumerate_opts.words, "Words whose quotient laws are stored")
      ->capture_default_str();
  add_common(enumerate_cmd, common);

  auto* sector_cmd = app.add_subcommand("sector", "Monte Carlo probability of a microstate sector");
  sector_cmd->add_option("--word", sector_opts.word, "Self-adjoint word in X, Y")->capture_default_str();
  sector_cmd->add_option("--target", sector_opts.target, "File holding the target measure");
  sector_cmd->add_option("--cover-id", sector_opts.cover_id, "Canonical form of a catalog cover");
  sector_cmd->add_option("--catalog", sector_opts.catalog, "Catalog file for --cover-id");
  sector_cmd->add_option("--epsilon", sector_opts.epsilon, "Sector radius")->capture_default_str();
  sector_cmd->add_option("--metric", sector_opts.metric, "levy, w1 or bhattacharyya")->capture_default_str();
  sector_cmd->add_option("--dim", sector_opts.dims, "Matrix dimension; repeat for a rate curve");
  sector_cmd->add_option("--trials", sector_opts.trials, "Trials per dimension")->capture_default_str();
  sector_cmd->add_option("--seed", sector_opts.seed, "Master seed")->required();
  sector_cmd->add_option("--stream", sector_opts.stream, "Stream id")->capture_default_str();
  add_common(sector_cmd, common);

  auto* classify_cmd = app.add_subcommand("classify", "Nearest catalog quotient law for an observed law");
  classify_cmd->add_option("--law", classify_opts.laws, "File holding an observed measure; repeat with --word")
      ->required();
  classify_cmd->add_option("--word", classify_opts.words, "Word of each law")->capture_default_str();
  classify_cmd->add_option("--catalog", classify_opts.catalog, "Catalog file")->required();
  classify_cmd->add_option("--metric", classify_opts.metric, "levy, w1 or bhattacharyya")->capture_default_str();
  add_common(classify_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*esd_cmd) return run_esd(esd_opts, common);
    if (*freelaw_cmd) return run_freelaw(freelaw_opts, common);
    if (*enumerate_cmd) return run_enumerate(enumerate_opts, common);
    if (*sector_cmd) return run_sector(sector_opts, common);
    if (*classify_cmd) return run_classify(classify_opts, common);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource error: out of memory\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}
