#include "slepian/serialize.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <system_error>

#include <json.hpp>

#include "slepian/error.hpp"

namespace slepian {
namespace {

using Json = nlohmann::ordered_json;

Json parse(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("invalid ") + what + " JSON: " + e.what(), e.byte);
  }
}

template <typename Fn>
auto with_schema(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw FormatError(std::string(what) + " JSON does not match schema: " + e.what(), 0);
  }
}

const char* split_name(SplitMode mode) { return mode == SplitMode::kStratified ? "stratified" : "random"; }

}  // namespace

std::string format_number(double value, std::optional<int> precision) {
  char buf[64];
  const auto result = precision ? std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, *precision)
                                : std::to_chars(buf, buf + sizeof buf, value);
  if (result.ec != std::errc{}) throw Error("number formatting failed");
  return {buf, result.ptr};
}

std::string basis_to_json(const DpssBasis& basis) {
  Json j;
  j["n"] = basis.length();
  j["w"] = basis.half_bandwidth();
  j["k"] = basis.count();
  j["eigenvalues"] = std::vector<double>(basis.eigenvalues().begin(), basis.eigenvalues().end());
  Json rows = Json::array();
  for (std::size_t k = 0; k < basis.count(); ++k) {
    const auto v = basis.sequence(k);
    rows.push_back(std::vector<double>(v.begin(), v.end()));
  }
  j["sequences"] = std::move(rows);
  return j.dump() + "\n";
}

DpssBasis basis_from_json(std::string_view text) {
  const Json j = parse(text, "basis");
  return with_schema("basis", [&] {
    DpssParams params{j.at("n").get<std::size_t>(), j.at("w").get<double>(), j.at("k").get<std::size_t>()};
    params.validate();
    auto eig = j.at("eigenvalues").get<std::vector<double>>();
    const auto& rows = j.at("sequences");
    if (!rows.is_array() || rows.size() != params.count)
      throw FormatError("basis JSON must hold k sequences", 0);
    RealMatrix seq(params.count, params.length);
    for (std::size_t k = 0; k < params.count; ++k) {
      const auto row = rows[k].get<std::vector<double>>();
      if (row.size() != params.length) throw FormatError("basis sequence length differs from n", 0);
      std::copy(row.begin(), row.end(), seq.row(k).begin());
    }
    return DpssBasis(params, std::move(seq), std::move(eig));
  });
}

std::string moments_to_json(const MomentSet& moments) {
  Json j;
  j["basis_id"] = moments.basis_id();
  j["grid"] = {{"radial", moments.grid().radial}, {"angular", moments.grid().angular}};
  j["quadrature"] = "midpoint radial rule r_i=(i+0.5)/R, uniform angular rule theta_j=2*pi*j/T, area element r dr dtheta";
  j["max_radial"] = moments.max_radial();
  j["max_angular"] = moments.max_angular();
  Json list = Json::array();
  const int l = static_cast<int>(moments.max_angular());
  for (std::size_t m = 0; m < moments.max_radial(); ++m)
    for (int n = -l; n <= l; ++n) {
      const auto s = moments.at(m, n);
      list.push_back({{"m", m}, {"n", n}, {"re", s.real()}, {"im", s.imag()}});
    }
  j["moments"] = std::move(list);
  return j.dump() + "\n";
}

MomentSet moments_from_json(std::string_view text) {
  const Json j = parse(text, "moments");
  return with_schema("moments", [&] {
    const auto m_count = j.at("max_radial").get<std::size_t>();
    const auto l = j.at("max_angular").get<std::size_t>();
    const PolarGrid grid{j.at("grid").at("radial").get<std::size_t>(), j.at("grid").at("angular").get<std::size_t>()};
    ComplexMatrix values(m_count, 2 * l + 1);
    std::vector<bool> seen(m_count * (2 * l + 1), false);
    for (const auto& rec : j.at("moments")) {
      const auto m = rec.at("m").get<std::size_t>();
      const auto n = rec.at("n").get<long>();
      if (m >= m_count || n < -static_cast<long>(l) || n > static_cast<long>(l))
        throw FormatError("moment record (" + std::to_string(m) + "," + std::to_string(n) + ") out of range", 0);
      const auto col = static_cast<std::size_t>(n + static_cast<long>(l));
      values(m, col) = {rec.at("re").get<double>(), rec.at("im").get<double>()};
      seen[m * (2 * l + 1) + col] = true;
    }
    for (bool s : seen)
      if (!s) throw FormatError("moment JSON is missing records", 0);
    return MomentSet(m_count, l, std::move(values), grid, j.at("basis_id").get<std::string>());
  });
}

std::string invariants_to_csv(const InvariantVector& phi, std::optional<int> precision) {
  std::string header, row;
  for (std::size_t m = 0; m < phi.max_radial; ++m)
    for (std::size_t n = 0; n <= phi.max_angular; ++n) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += "phi_" + std::to_string(m) + "_" + std::to_string(n);
      row += format_number(phi.at(m, n), precision);
    }
  return header + "\n" + row + "\n";
}

std::string reconstruction_to_json(const Reconstruction& rec) {
  Json j;
  j["radial"] = rec.image.n_radial();
  j["angular"] = rec.image.n_angular();
  j["imag_residual"] = rec.imag_residual;
  Json rows = Json::array();
  for (std::size_t i = 0; i < rec.image.n_radial(); ++i) {
    std::vector<double> row;
    row.reserve(rec.image.n_angular());
    for (const auto& s : rec.image.ring(i)) row.push_back(s.real());
    rows.push_back(std::move(row));
  }
  j["samples"] = std::move(rows);
  return j.dump() + "\n";
}

std::string stability_to_csv(const StabilityReport& report, std::optional<int> precision) {
  std::string out = "angle";
  for (const auto& c : report.columns) out += ",phi_" + std::to_string(c.m) + "_" + std::to_string(c.n);
  out += '\n';
  for (std::size_t r = 0; r < report.angles.size(); ++r) {
    out += format_number(report.angles[r]);
    for (std::size_t c = 0; c < report.columns.size(); ++c) out += "," + format_number(report.values(r, c), precision);
    out += '\n';
  }
  out += "std";
  for (double s : report.std_row) out += "," + format_number(s, precision);
  out += '\n';
  return out;
}

std::string stability_to_json(const StabilityReport& report) {
  Json j;
  j["angles"] = report.angles;
  Json cols = Json::array();
  for (const auto& c : report.columns) cols.push_back({{"m", c.m}, {"n", c.n}});
  j["columns"] = std::move(cols);
  Json rows = Json::array();
  for (std::size_t r = 0; r < report.values.rows(); ++r) {
    const auto row = report.values.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["values"] = std::move(rows);
  j["mean"] = report.mean_row;
  j["std"] = report.std_row;
  j["metadata"] = {{"grid", {{"radial", report.grid.radial}, {"angular", report.grid.angular}}},
                   {"basis_id", report.basis_id},
                   {"generator", report.generator},
                   {"seed", report.seed}};
  if (report.noise)
    j["metadata"]["noise"] = {{"snr_db", report.noise->snr_db}, {"seed", report.noise->seed}};
  else
    j["metadata"]["noise"] = nullptr;
  return j.dump(2) + "\n";
}

std::string classification_to_csv(const ClassificationReport& report, std::optional<int> precision) {
  std::string out = "train_percent,mean,std\n";
  for (std::size_t f = 0; f < report.train_fractions.size(); ++f)
    out += format_number(100.0 * report.train_fractions[f]) + "," +
           format_number(report.mean_accuracy[f], precision) + "," + format_number(report.std_accuracy[f], precision) +
           "\n";
  return out;
}

std::string classification_to_json(const ClassificationReport& report) {
  Json j;
  j["train_fractions"] = report.train_fractions;
  j["mean"] = report.mean_accuracy;
  j["std"] = report.std_accuracy;
  j["metadata"] = {{"repeats", report.repeats},
                   {"seed", report.seed},
                   {"split", split_name(report.split)},
                   {"reg", report.reg},
                   {"epochs", report.epochs},
                   {"generator", report.generator}};
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place at " + path.string());
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace slepian
