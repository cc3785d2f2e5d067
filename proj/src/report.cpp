#include <erdlab/report.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace erdlab {

std::string csv_num(Scalar value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

CsvFile::CsvFile(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot open for writing: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

CsvFile::~CsvFile() {
  try {
    close();
  } catch (...) {
  }
}

CsvFile& CsvFile::cell(const std::string& value) {
  if (row_open_) out_ << ',';
  out_ << value;
  row_open_ = true;
  return *this;
}

void CsvFile::end_row() {
  out_ << '\n';
  row_open_ = false;
}

void CsvFile::close() {
  if (closed_) return;
  closed_ = true;
  out_.flush();
  if (!out_) throw std::runtime_error("write failed: " + path_);
  out_.close();
}

void write_matrix_csv(const std::string& path, const Matrix& values) {
  std::vector<std::string> header;
  header.reserve(static_cast<std::size_t>(values.cols()));
  for (Eigen::Index j = 0; j < values.cols(); ++j) header.push_back("c" + std::to_string(j));
  CsvFile csv(path, header);
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) csv.cell(values(i, j));
    csv.end_row();
  }
  csv.close();
}

std::uint64_t fnv1a(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::uint64_t checksum_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for checksum: " + path);
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const auto count = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < count; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001B3ULL;
    }
  }
  return hash;
}

RunRecorder::RunRecorder(std::string out_dir) : out_dir_(std::move(out_dir)) {}

void RunRecorder::record(const std::string& name) {
  const std::string full = path(name);
  Artifact artifact{name, checksum_file(full),
                    static_cast<std::uint64_t>(std::filesystem::file_size(full))};
  for (auto& existing : artifacts_) {
    if (existing.name == name) {
      existing = artifact;
      return;
    }
  }
  artifacts_.push_back(artifact);
}

void RunRecorder::time_step(const std::string& step, double seconds) {
  timings_.emplace_back(step, seconds);
}

void RunRecorder::note(const std::string& key, const std::string& value) {
  notes_.emplace_back(key, value);
}

void RunRecorder::write_manifest(const ExperimentConfig& config, const std::string& command,
                                 const std::string& status, const std::string& error) {
  nlohmann::json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["command"] = command;
  manifest["status"] = status;
  if (!error.empty()) manifest["error"] = error;
  manifest["seed"] = config.seed;

  nlohmann::json snapshot = nlohmann::json::object();
  for (const auto& [key, value] : config_snapshot(config)) snapshot[key] = value;
  manifest["config"] = snapshot;

  const std::string manifest_path = path("manifest.json");
  nlohmann::json artifacts = nlohmann::json::array();
  auto merged = artifacts_;
  std::ifstream previous(manifest_path);
  if (previous) {
    try {
      nlohmann::json old = nlohmann::json::parse(previous);
      for (const auto& entry : old.at("artifacts")) {
        const std::string name = entry.at("file");
        bool seen = false;
        for (const auto& artifact : merged) seen = seen || artifact.name == name;
        if (!seen && std::filesystem::exists(path(name)))
          merged.push_back({name, std::stoull(entry.at("checksum_fnv1a64").get<std::string>(),
                                              nullptr, 16),
                            entry.at("bytes").get<std::uint64_t>()});
      }
    } catch (const std::exception&) {
      // Unreadable previous manifest: start fresh.
    }
  }
  for (const auto& artifact : merged) {
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(artifact.checksum));
    artifacts.push_back({{"file", artifact.name},
                         {"checksum_fnv1a64", std::string(hex)},
                         {"bytes", artifact.bytes}});
  }
  manifest["artifacts"] = artifacts;

  nlohmann::json timings = nlohmann::json::array();
  for (const auto& [step, seconds] : timings_)
    timings.push_back({{"step", step}, {"seconds", seconds}});
  manifest["timings"] = timings;

  if (!notes_.empty()) {
    nlohmann::json notes = nlohmann::json::object();
    for (const auto& [key, value] : notes_) notes[key] = value;
    manifest["notes"] = notes;
  }

  std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + manifest_path);
  out << manifest.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + manifest_path);
}

void timed_step(RunRecorder& recorder, const std::string& step, const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  recorder.time_step(step, elapsed.count());
}

}  // namespace erdlab
