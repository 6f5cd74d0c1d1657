#include "slepian_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slepian/dpss.hpp"
#include "slepian/error.hpp"
#include "slepian/harness.hpp"
#include "slepian/imaging.hpp"
#include "slepian/moments.hpp"
#include "slepian/serialize.hpp"

namespace slepian::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 1;
const DpssParams kDefaultBasis{64, 0.1, 10};

// Thrown after parsing when flag values break a module precondition.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridFlags {
  std::size_t radial = 128;
  std::size_t angular = 256;

  void add(CLI::App* app) {
    app->add_option("--radial", radial, "Radial samples R of the polar grid")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--angular", angular, "Angular samples T of the polar grid")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }
  PolarGrid grid() const { return {radial, angular}; }
};

struct TableFlags {
  std::string image;
  std::string basis;
  std::vector<double> angles = table_angles();
  std::vector<std::string> orders;
  GridFlags grid;
  std::string out;
  std::string json;
  std::optional<int> precision;
  std::size_t threads = 1;
  double snr_db = 30.0;
  std::uint64_t seed = kDefaultSeed;

  void add(CLI::App* app, bool noise) {
    app->add_option("--image", image, "Input PGM (default: bundled 128x128 synthetic face)")
        ->check(CLI::ExistingFile);
    app->add_option("--basis", basis, "DPSS basis JSON (default: n=64, w=0.1, k=10)")->check(CLI::ExistingFile);
    app->add_option("--angles", angles, "Comma-separated rotation angles in degrees")
        ->delimiter(',')
        ->capture_default_str();
    app->add_option("--orders", orders, "Comma-separated m:n columns (default: the ten table columns)")
        ->delimiter(',');
    grid.add(app);
    app->add_option("--out", out, "Output CSV table")->required();
    app->add_option("--json", json, "Also write the full report as JSON");
    app->add_option("--precision", precision, "Fixed decimals in the CSV (default: shortest round-trip)")
        ->check(CLI::Range(0, 17));
    app->add_option("--threads", threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    if (noise) {
      app->add_option("--snr-db", snr_db, "Signal-to-noise ratio of the added noise")->capture_default_str();
      app->add_option("--seed", seed, "Noise seed")->capture_default_str();
    }
  }
};

DpssBasis load_basis(const std::string& path) {
  if (path.empty()) return compute_dpss(kDefaultBasis);
  return basis_from_json(read_text_file(path));
}

std::vector<Order> parse_orders(const std::vector<std::string>& specs) {
  if (specs.empty()) return table_orders();
  std::vector<Order> orders;
  for (const auto& spec : specs) {
    const auto colon = spec.find(':');
    std::size_t m = 0, n = 0;
    std::size_t used_m = 0, used_n = 0;
    try {
      if (colon == std::string::npos) throw std::invalid_argument(spec);
      m = std::stoul(spec.substr(0, colon), &used_m);
      n = std::stoul(spec.substr(colon + 1), &used_n);
    } catch (const std::logic_error&) {
      throw UsageError("--orders: expected m:n, got '" + spec + "'");
    }
    if (used_m != colon || used_n != spec.size() - colon - 1 || spec[0] == '-' || spec[colon + 1] == '-')
      throw UsageError("--orders: expected m:n, got '" + spec + "'");
    orders.push_back({m, n});
  }
  return orders;
}

void check_grid(const GridFlags& g, std::size_t max_angular, const char* angular_flag_owner) {
  if (2 * max_angular + 1 > g.angular)
    throw UsageError(std::string("--angular ") + std::to_string(g.angular) + " cannot resolve angular order " +
                     std::to_string(max_angular) + " from " + angular_flag_owner + " (needs at least " +
                     std::to_string(2 * max_angular + 1) + ")");
}

void check_radial_order(std::size_t m_count, const DpssBasis& basis, const char* flag) {
  if (m_count > basis.params().count)
    throw UsageError(std::string(flag) + " needs " + std::to_string(m_count) + " radial orders but the basis has " +
                     std::to_string(basis.params().count));
}

int run_table(const TableFlags& f, bool noisy) {
  if (f.angles.empty()) throw UsageError("--angles: at least one angle is required");
  const auto orders = parse_orders(f.orders);
  const DpssBasis basis = load_basis(f.basis);
  std::size_t max_m = 0, max_n = 0;
  for (const auto& o : orders) {
    max_m = std::max(max_m, o.m);
    max_n = std::max(max_n, o.n);
  }
  check_radial_order(max_m + 1, basis, "--orders");
  check_grid(f.grid, max_n, "--orders");

  const RasterImage image = f.image.empty() ? synthetic_test_image() : read_pgm_file(f.image);
  std::optional<NoiseSpec> noise;
  if (noisy) noise = NoiseSpec{f.snr_db, f.seed};
  const auto report = rotation_stability(image, f.angles, orders, basis, f.grid.grid(), noise, f.threads);
  write_file_atomic(f.out, stability_to_csv(report, f.precision));
  if (!f.json.empty()) write_file_atomic(f.json, stability_to_json(report));
  return kExitOk;
}

SplitMode parse_split(const std::string& s) { return s == "random" ? SplitMode::kRandom : SplitMode::kStratified; }

std::string class_dir_name(std::size_t label, std::size_t n_classes) {
  const int width = static_cast<int>(std::to_string(n_classes).size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "class_%0*zu", width, label);
  return buf;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slepian moment features: DPSS bases, moments, rotation invariants and experiments", "slepian"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  // dpss gen
  auto* dpss = app.add_subcommand("dpss", "Discrete prolate spheroidal sequences");
  dpss->require_subcommand(1);
  auto* dpss_gen = dpss->add_subcommand("gen", "Compute a DPSS basis and write it as JSON");
  DpssParams dp = kDefaultBasis;
  std::string dpss_out;
  dpss_gen->add_option("--n", dp.length, "Sequence length N")->required()->check(CLI::Range(1, 4096));
  dpss_gen->add_option("--w", dp.half_bandwidth, "Half bandwidth W in (0, 0.5)")->required();
  dpss_gen->add_option("--k", dp.count, "Number of sequences K <= N")->required()->check(CLI::PositiveNumber);
  dpss_gen->add_option("--out", dpss_out, "Output JSON")->required();

  // moments compute
  auto* moments = app.add_subcommand("moments", "Slepian moments of an image");
  moments->require_subcommand(1);
  auto* moments_compute = moments->add_subcommand("compute", "Compute S[m][n] and write them as JSON");
  std::string mc_image, mc_basis, mc_out;
  std::size_t mc_m = 10, mc_l = 9;
  GridFlags mc_grid;
  moments_compute->add_option("--image", mc_image, "Input PGM")->required()->check(CLI::ExistingFile);
  moments_compute->add_option("--basis", mc_basis, "DPSS basis JSON")->required()->check(CLI::ExistingFile);
  moments_compute->add_option("--m", mc_m, "Radial orders M")->capture_default_str()->check(CLI::PositiveNumber);
  moments_compute->add_option("--l", mc_l, "Largest angular order L")->capture_default_str();
  mc_grid.add(moments_compute);
  moments_compute->add_option("--out", mc_out, "Output JSON")->required();

  // invariants
  auto* inv = app.add_subcommand("invariants", "Rotation invariants Phi[m][n] as a one-row CSV");
  std::string inv_moments, inv_image, inv_basis, inv_out;
  std::size_t inv_m = 10, inv_l = 9;
  std::optional<int> inv_precision;
  GridFlags inv_grid;
  auto* inv_moments_opt =
      inv->add_option("--moments", inv_moments, "Moment JSON from 'moments compute'")->check(CLI::ExistingFile);
  auto* inv_image_opt = inv->add_option("--image", inv_image, "Input PGM")->check(CLI::ExistingFile);
  inv->add_option("--basis", inv_basis, "DPSS basis JSON (with --image)")->check(CLI::ExistingFile);
  inv->add_option("--m", inv_m, "Radial orders M (with --image)")->capture_default_str()->check(CLI::PositiveNumber);
  inv->add_option("--l", inv_l, "Largest angular order L (with --image)")->capture_default_str();
  inv_grid.add(inv);
  inv->add_option("--out", inv_out, "Output CSV")->required();
  inv->add_option("--precision", inv_precision, "Fixed decimals (default: shortest round-trip)")
      ->check(CLI::Range(0, 17));
  inv_moments_opt->excludes(inv_image_opt);

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "Rebuild a polar image from its moments");
  std::string rec_moments, rec_basis, rec_out;
  std::optional<std::size_t> rec_radial, rec_angular;
  rec->add_option("--moments", rec_moments, "Moment JSON")->required()->check(CLI::ExistingFile);
  rec->add_option("--basis", rec_basis, "DPSS basis JSON used for the moments")->required()->check(CLI::ExistingFile);
  rec->add_option("--radial", rec_radial, "Output radial samples (default: moment grid)")->check(CLI::PositiveNumber);
  rec->add_option("--angular", rec_angular, "Output angular samples (default: moment grid)")
      ->check(CLI::PositiveNumber);
  rec->add_option("--out", rec_out, "Output JSON")->required();

  // rotate-test / noise-test
  auto* rot = app.add_subcommand("rotate-test", "Phi[m][n] of an image at several rotations, plus std row");
  TableFlags rot_flags;
  rot_flags.add(rot, false);
  auto* noise = app.add_subcommand("noise-test", "rotate-test with Gaussian noise added to every rotation");
  TableFlags noise_flags;
  noise_flags.add(noise, true);

  // classify
  auto* cls = app.add_subcommand("classify", "Train-fraction classification sweep");
  std::string cls_data, cls_basis, cls_out, cls_json, cls_split = "stratified";
  std::vector<double> cls_fractions = table_fractions();
  std::size_t cls_repeats = 10, cls_classes = 6, cls_per_class = 8, cls_rotations = 1, cls_threads = 1;
  std::size_t cls_epochs = SweepOptions{}.epochs;
  double cls_reg = SweepOptions{}.reg;
  std::uint64_t cls_seed = kDefaultSeed;
  std::optional<int> cls_precision;
  GridFlags cls_grid{64, 128};
  cls->add_option("--data", cls_data, "Dataset root <root>/<class>/<image>.pgm (default: synthetic)")
      ->check(CLI::ExistingDirectory);
  cls->add_option("--basis", cls_basis, "DPSS basis JSON for --data (default: n=64, w=0.1, k=10)")
      ->check(CLI::ExistingFile);
  cls->add_option("--classes", cls_classes, "Synthetic classes")->capture_default_str()->check(CLI::Range(2, 1000));
  cls->add_option("--per-class", cls_per_class, "Synthetic items per class")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cls->add_option("--rotations", cls_rotations, "Synthetic rotated copies per item")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cls->add_option("--fractions", cls_fractions, "Comma-separated training fractions in (0,1)")
      ->delimiter(',')
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cls->add_option("--repeats", cls_repeats, "Random splits per fraction")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cls->add_option("--seed", cls_seed, "Seed for data generation and splits")->capture_default_str();
  cls->add_option("--split", cls_split, "Split mode")
      ->capture_default_str()
      ->check(CLI::IsMember({"stratified", "random"}));
  cls->add_option("--reg", cls_reg, "Regularization strength")->capture_default_str()->check(CLI::PositiveNumber);
  cls->add_option("--epochs", cls_epochs, "Training epochs")->capture_default_str()->check(CLI::PositiveNumber);
  cls_grid.add(cls);
  cls->add_option("--threads", cls_threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  cls->add_option("--out", cls_out, "Output CSV table")->required();
  cls->add_option("--json", cls_json, "Also write the full report as JSON");
  cls->add_option("--precision", cls_precision, "Fixed decimals in the CSV (default: shortest round-trip)")
      ->check(CLI::Range(0, 17));

  // synth
  auto* synth = app.add_subcommand("synth", "Synthetic test data");
  synth->require_subcommand(1);
  auto* synth_image = synth->add_subcommand("image", "Write the synthetic face test image as PGM");
  std::string si_out;
  std::size_t si_size = 128;
  double si_angle = 0.0;
  std::optional<double> si_snr;
  std::uint64_t si_seed = kDefaultSeed;
  bool si_16bit = false;
  synth_image->add_option("--size", si_size, "Width and height")->capture_default_str()->check(CLI::Range(8, 8192));
  synth_image->add_option("--angle", si_angle, "Rotate by this many degrees")->capture_default_str();
  synth_image->add_option("--snr-db", si_snr, "Add Gaussian noise at this SNR");
  synth_image->add_option("--seed", si_seed, "Noise seed")->capture_default_str();
  synth_image->add_flag("--16bit", si_16bit, "Write maxval 65535 instead of 255");
  synth_image->add_option("--out", si_out, "Output PGM")->required();

  auto* synth_dataset = synth->add_subcommand("dataset", "Write a synthetic labeled dataset as PGM files");
  std::string sd_out;
  std::size_t sd_classes = 6, sd_per_class = 8, sd_rotations = 1, sd_size = SyntheticOptions{}.image_size;
  std::uint64_t sd_seed = kDefaultSeed;
  synth_dataset->add_option("--classes", sd_classes, "Classes")->capture_default_str()->check(CLI::Range(2, 1000));
  synth_dataset->add_option("--per-class", sd_per_class, "Items per class")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synth_dataset->add_option("--rotations", sd_rotations, "Rotated copies per item")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synth_dataset->add_option("--size", sd_size, "Image width and height")
      ->capture_default_str()
      ->check(CLI::Range(8, 4096));
  synth_dataset->add_option("--seed", sd_seed, "Seed")->capture_default_str();
  synth_dataset->add_option("--out", sd_out, "Output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "slepian: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (dpss_gen->parsed()) {
      if (!(dp.half_bandwidth > 0.0 && dp.half_bandwidth < 0.5))
        throw UsageError("--w must lie in (0, 0.5)");
      if (dp.count > dp.length) throw UsageError("--k must not exceed --n");
      write_file_atomic(dpss_out, basis_to_json(compute_dpss(dp)));
    } else if (moments_compute->parsed()) {
      const DpssBasis basis = basis_from_json(read_text_file(mc_basis));
      check_radial_order(mc_m, basis, "--m");
      check_grid(mc_grid, mc_l, "--l");
      const PolarImage polar = to_polar(read_pgm_file(mc_image), mc_grid.radial, mc_grid.angular);
      write_file_atomic(mc_out, moments_to_json(compute_moments(polar, basis, mc_m, mc_l)));
    } else if (inv->parsed()) {
      MomentSet ms;
      if (!inv_moments.empty()) {
        ms = moments_from_json(read_text_file(inv_moments));
      } else {
        if (inv_image.empty()) throw UsageError("invariants: one of --moments or --image is required");
        const DpssBasis basis = load_basis(inv_basis);
        check_radial_order(inv_m, basis, "--m");
        check_grid(inv_grid, inv_l, "--l");
        ms = compute_moments(to_polar(read_pgm_file(inv_image), inv_grid.radial, inv_grid.angular), basis, inv_m,
                             inv_l);
      }
      write_file_atomic(inv_out, invariants_to_csv(invariants(ms), inv_precision));
    } else if (rec->parsed()) {
      const MomentSet ms = moments_from_json(read_text_file(rec_moments));
      const DpssBasis basis = basis_from_json(read_text_file(rec_basis));
      const PolarGrid grid{rec_radial.value_or(ms.grid().radial), rec_angular.value_or(ms.grid().angular)};
      check_radial_order(ms.max_radial(), basis, "--basis");
      write_file_atomic(rec_out, reconstruction_to_json(reconstruct(ms, basis, grid)));
    } else if (rot->parsed()) {
      return run_table(rot_flags, false);
    } else if (noise->parsed()) {
      return run_table(noise_flags, true);
    } else if (cls->parsed()) {
      for (double f : cls_fractions)
        if (!(f > 0.0 && f < 1.0)) throw UsageError("--fractions must lie strictly between 0 and 1");
      SweepOptions options;
      options.reg = cls_reg;
      options.epochs = cls_epochs;
      options.split = parse_split(cls_split);
      options.threads = cls_threads;
      LabeledDataset ds;
      if (!cls_data.empty()) {
        const DpssBasis basis = load_basis(cls_basis);
        check_radial_order(10, basis, "--basis");
        check_grid(cls_grid, 9, "the 100-element feature vector");
        ds = load_dataset_dir(cls_data, basis, cls_grid.grid(), cls_threads);
      } else {
        check_grid(cls_grid, 9, "the 100-element feature vector");
        SyntheticOptions synth_options;
        synth_options.grid = cls_grid.grid();
        const auto images = make_synthetic_images(cls_classes, cls_per_class, cls_rotations, cls_seed, synth_options);
        ds = featurize(images, compute_dpss(synth_options.basis), synth_options.grid, cls_threads);
      }
      ClassificationReport report;
      try {
        report = classification_sweep(ds, cls_fractions, cls_repeats, cls_seed, options);
      } catch (const ParameterError& e) {
        throw UsageError(std::string("--fractions: ") + e.what());
      }
      write_file_atomic(cls_out, classification_to_csv(report, cls_precision));
      if (!cls_json.empty()) write_file_atomic(cls_json, classification_to_json(report));
    } else if (synth_image->parsed()) {
      RasterImage image = synthetic_test_image(si_size);
      if (si_angle != 0.0) image = rotate_image(image, si_angle);
      if (si_snr) image = add_gaussian_noise(image, NoiseSpec{*si_snr, si_seed});
      write_file_atomic(si_out, write_pgm(image, si_16bit ? PgmDepth::k16Bit : PgmDepth::k8Bit));
    } else if (synth_dataset->parsed()) {
      SyntheticOptions options;
      options.image_size = sd_size;
      const auto images = make_synthetic_images(sd_classes, sd_per_class, sd_rotations, sd_seed, options);
      const fs::path root(sd_out);
      std::vector<std::size_t> counters(sd_classes + 1, 0);
      for (const auto& item : images) {
        const auto label = static_cast<std::size_t>(item.label);
        const fs::path dir = root / class_dir_name(label, sd_classes);
        fs::create_directories(dir);
        char name[32];
        std::snprintf(name, sizeof name, "%05zu.pgm", counters[label]++);
        write_file_atomic(dir / name, write_pgm(item.image));
      }
    }
  } catch (const UsageError& e) {
    err << "slepian: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "slepian: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace slepian::cli
