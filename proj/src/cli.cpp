#include "fpe/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fpe/compare.hpp"
#include "fpe/equalize.hpp"
#include "fpe/error.hpp"
#include "fpe/pgm.hpp"
#include "fpe/pipeline.hpp"
#include "fpe/synth.hpp"
#include "fpe/threshold.hpp"

namespace fpe::cli {

namespace fs = std::filesystem;

namespace {

// A failure tagged with the pipeline stage that produced it.
class StageError : public std::runtime_error {
public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

GrayImage read_input(const std::string& path) {
  return stage("read", [&] { return load_pgm(path); });
}

void write_output(const std::string& path, const GrayImage& image) {
  stage("write", [&] {
    if (fs::path(path).extension() != ".pgm") {
      throw Error("unsupported output format for " + path + " (only .pgm is supported)");
    }
    save_pgm(path, image);
  });
}

void write_text(const std::string& path, const std::string& text) {
  stage("write", [&] {
    write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                      text.size()));
  });
}

std::optional<XiMode> parse_xi_mode(const std::string& text, std::uint64_t seed) {
  if (text == "seeded") return XiSeeded{seed};
  if (text == "deterministic") return XiDeterministic{};
  constexpr std::string_view prefix = "fixed=";
  if (text.rfind(prefix, 0) == 0) {
    const std::string number = text.substr(prefix.size());
    try {
      std::size_t used = 0;
      const double v = std::stod(number, &used);
      if (used == number.size() && v > 0.0 && std::isfinite(v)) return XiFixed{v};
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

const CLI::Validator kXiModeValidator(
    [](std::string& s) -> std::string {
      return parse_xi_mode(s, 0) ? std::string() : "expected seeded, deterministic or fixed=<v>, v > 0";
    },
    "seeded|deterministic|fixed=<v>");

Requantize parse_post(const std::string& s) {
  return s == "rescale" ? Requantize::rescale : Requantize::clamp;
}

PreEqualize parse_pre(const std::string& s) {
  if (s == "on") return PreEqualize::on;
  if (s == "off") return PreEqualize::off;
  return PreEqualize::automatic;
}

struct TriggerFlags {
  double min_rms = LowContrastTrigger{}.min_rms_contrast;
  int min_range = LowContrastTrigger{}.min_dynamic_range;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--min-rms", min_rms,
                    "Auto pre-equalization fires below this rms contrast");
    cmd->add_option("--min-range", min_range,
                    "Auto pre-equalization fires below this dynamic range")
        ->check(CLI::Range(0, 256));
  }
  LowContrastTrigger trigger() const { return {min_rms, min_range}; }
};

struct EnhanceFlags {
  std::string input;
  std::string output;
  std::string ridge_map;
  std::string xi_mode = "seeded";
  std::uint64_t seed = 42;
  std::string post = "clamp";
  double fuzzy_c = 255.0;
  TriggerFlags trigger;
};

int run_enhance(const EnhanceFlags& f, std::ostream& out) {
  const GrayImage image = read_input(f.input);
  EnhanceOptions options;
  options.xi_mode = *parse_xi_mode(f.xi_mode, f.seed);
  options.requantize = parse_post(f.post);
  options.fuzzy.bandwidth = f.fuzzy_c;
  options.trigger = f.trigger.trigger();
  const EnhanceResult r = stage("enhance", [&] { return enhance(image, options); });
  write_output(f.output, r.enhanced);
  if (!f.ridge_map.empty()) write_output(f.ridge_map, r.ridge_map);
  out << "xi=" << format("%.9g", r.xi) << " threshold=" << r.threshold << '\n';
  return kExitOk;
}

struct EqualizeFlags {
  std::string input;
  std::string output;
  std::string method = "global";
  std::size_t tile = kDefaultTile;
};

int run_equalize(const EqualizeFlags& f) {
  const GrayImage image = read_input(f.input);
  const GrayImage result = stage("equalize", [&] {
    return f.method == "local" ? lhe(image, f.tile) : ghe(image);
  });
  write_output(f.output, result);
  return kExitOk;
}

struct ThresholdFlags {
  std::string input;
  std::string output;
  std::string method = "fuzzy";
  std::string pre_he = "auto";
  double fuzzy_c = 255.0;
  std::string curve_path;
  TriggerFlags trigger;
};

int run_threshold(const ThresholdFlags& f, std::ostream& out) {
  const GrayImage image = read_input(f.input);
  const ThresholdResult r = stage("threshold", [&] {
    const Histogram hist = histogram(image);
    if (f.method == "otsu") return otsu(hist);
    return fuzzy_threshold(hist, FuzzyMembershipParams{f.fuzzy_c}, parse_pre(f.pre_he), image,
                           f.trigger.trigger());
  });
  const GrayImage map = stage("binarize", [&] { return binarize(image, r.level); });
  write_output(f.output, map);
  if (!f.curve_path.empty()) {
    std::ostringstream csv;
    csv << "level,criterion\n";
    for (std::size_t t = 0; t < kLevels; ++t) {
      csv << t << ',';
      if (r.criterion_curve[t]) {
        csv << format("%.12g", *r.criterion_curve[t]);
      } else {
        csv << '-';
      }
      csv << '\n';
    }
    write_text(f.curve_path, csv.str());
  }
  out << "level=" << r.level << '\n';
  return kExitOk;
}

struct CompareFlags {
  std::vector<std::string> inputs;
  std::string csv_path;
  std::uint64_t seed = 42;
  std::string post = "clamp";
  std::size_t tile = kDefaultTile;
};

int run_compare(const CompareFlags& f, std::ostream& out) {
  CompareConfig config;
  config.enhance.xi_mode = XiSeeded{f.seed};
  config.enhance.requantize = parse_post(f.post);
  config.tile = f.tile;

  std::vector<ComparisonRow> rows;
  for (const auto& path : f.inputs) {
    const GrayImage image = read_input(path);
    auto image_rows = stage("compare", [&] {
      return compare(fs::path(path).stem().string(), image, config);
    });
    rows.insert(rows.end(), image_rows.begin(), image_rows.end());
  }

  std::ostringstream csv;
  write_csv(csv, rows);
  if (f.csv_path.empty()) {
    out << csv.str();
  } else {
    write_text(f.csv_path, csv.str());
  }
  return kExitOk;
}

struct GenerateFlags {
  std::string quality;
  std::string out_dir;
  std::size_t count = 0;
  std::uint64_t seed = 42;
  std::size_t size = 256;
};

int run_generate(const GenerateFlags& f, std::ostream& out) {
  const QualityTier tier = parse_tier(f.quality);
  stage("generate", [&] { fs::create_directories(f.out_dir); });
  for (std::size_t i = 0; i < f.count; ++i) {
    const GrayImage image =
        stage("generate", [&] { return corpus_image(tier, i, f.seed, f.size, f.size); });
    char name[64];
    std::snprintf(name, sizeof name, "%s_%03zu.pgm", std::string(tier_name(tier)).c_str(), i);
    const std::string path = (fs::path(f.out_dir) / name).string();
    write_output(path, image);
    out << path << '\n';
  }
  return kExitOk;
}

struct MetricsFlags {
  std::vector<std::string> inputs;
};

void print_metrics(std::ostream& out, const std::string& path, const ImageMetrics& m) {
  out << path << " mean=" << format("%.6f", m.mean)
      << " rms_contrast=" << format("%.6f", m.rms_contrast)
      << " dynamic_range=" << m.dynamic_range << " entropy=" << format("%.6f", m.entropy)
      << '\n';
}

int run_metrics(const MetricsFlags& f, std::ostream& out) {
  std::vector<GrayImage> images;
  for (const auto& path : f.inputs) images.push_back(read_input(path));
  for (std::size_t i = 0; i < images.size(); ++i) print_metrics(out, f.inputs[i], metrics(images[i]));
  if (images.size() == 2) {
    const double mse =
        stage("metrics", [&] { return mean_squared_difference(images[0], images[1]); });
    out << "mse=" << format("%.6f", mse) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fingerprint contrast enhancement toolkit", "fpenhance"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  EnhanceFlags enh;
  auto* c_enh = app.add_subcommand("enhance", "Wavelet/SVD illumination correction + fuzzy ridge map");
  c_enh->add_option("input", enh.input, "Input PGM")->required()->check(CLI::ExistingFile);
  c_enh->add_option("-o,--output", enh.output, "Enhanced output PGM")->required();
  c_enh->add_option("--ridge-map", enh.ridge_map, "Optional binary ridge/valley map PGM");
  c_enh->add_option("--xi-mode", enh.xi_mode, "Illumination ratio source")
      ->check(kXiModeValidator);
  c_enh->add_option("--seed", enh.seed, "Seed for --xi-mode seeded");
  c_enh->add_option("--post", enh.post, "Requantization after the inverse transform")
      ->check(CLI::IsMember({"clamp", "rescale"}));
  c_enh->add_option("--fuzzy-c", enh.fuzzy_c, "Fuzzy membership bandwidth")
      ->check(CLI::PositiveNumber);
  enh.trigger.add_to(c_enh);

  EqualizeFlags eq;
  auto* c_eq = app.add_subcommand("equalize", "Global or local histogram equalization");
  c_eq->add_option("input", eq.input, "Input PGM")->required()->check(CLI::ExistingFile);
  c_eq->add_option("-o,--output", eq.output, "Output PGM")->required();
  c_eq->add_option("--method", eq.method, "Equalization method")
      ->check(CLI::IsMember({"global", "local"}));
  c_eq->add_option("--tile", eq.tile, "Tile size for local equalization")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));

  ThresholdFlags th;
  auto* c_th = app.add_subcommand("threshold", "Select a threshold and write the binary map");
  c_th->add_option("input", th.input, "Input PGM")->required()->check(CLI::ExistingFile);
  c_th->add_option("-o,--output", th.output, "Binary output PGM")->required();
  c_th->add_option("--method", th.method, "Threshold selection")
      ->check(CLI::IsMember({"otsu", "fuzzy"}));
  c_th->add_option("--pre-he", th.pre_he, "Histogram equalization before the fuzzy search")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  c_th->add_option("--fuzzy-c", th.fuzzy_c, "Fuzzy membership bandwidth")
      ->check(CLI::PositiveNumber);
  c_th->add_option("--print-curve", th.curve_path, "Write the criterion curve as CSV");
  th.trigger.add_to(c_th);

  CompareFlags cmp;
  auto* c_cmp = app.add_subcommand("compare", "Compare Otsu, GHE, LHE and the proposed pipeline");
  c_cmp->add_option("inputs", cmp.inputs, "Input PGMs")->required()->check(CLI::ExistingFile);
  c_cmp->add_option("--csv", cmp.csv_path, "Write CSV here instead of standard output");
  c_cmp->add_option("--seed", cmp.seed, "Seed for the illumination ratio");
  c_cmp->add_option("--post", cmp.post, "Requantization for the proposed method")
      ->check(CLI::IsMember({"clamp", "rescale"}));
  c_cmp->add_option("--tile", cmp.tile, "Tile size for local equalization")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));

  GenerateFlags gen;
  auto* c_gen = app.add_subcommand("generate", "Write a synthetic fingerprint-like corpus");
  c_gen->add_option("--quality", gen.quality, "Quality tier")
      ->required()
      ->check(CLI::IsMember({"best", "medium", "poor"}));
  c_gen->add_option("--out", gen.out_dir, "Output directory")->required();
  c_gen->add_option("--count", gen.count, "Number of images")->required();
  c_gen->add_option("--seed", gen.seed, "Corpus seed");
  c_gen->add_option("--size", gen.size, "Image width and height")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 14));

  MetricsFlags met;
  auto* c_met = app.add_subcommand("metrics", "Print image metrics (and MSE for two images)");
  c_met->add_option("inputs", met.inputs, "One or two input PGMs")
      ->required()
      ->expected(1, 2)
      ->check(CLI::ExistingFile);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (*c_enh) return run_enhance(enh, out);
    if (*c_eq) return run_equalize(eq);
    if (*c_th) return run_threshold(th, out);
    if (*c_cmp) return run_compare(cmp, out);
    if (*c_gen) return run_generate(gen, out);
    if (*c_met) return run_metrics(met, out);
  } catch (const StageError& e) {
    err << "fpenhance: " << e.stage() << ": " << e.what() << '\n';
    return kExitProcessing;
  } catch (const std::exception& e) {
    err << "fpenhance: " << e.what() << '\n';
    return kExitProcessing;
  }
  return kExitUsage;
}

}  // namespace fpe::cli
