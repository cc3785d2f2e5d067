#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <erdlab/config.hpp>
#include <erdlab/types.hpp>

namespace erdlab {

inline constexpr const char* kToolVersion = "erdlab 0.1.0";

/// Shortest round-trip decimal for a double (%.17g); the one numeric format
/// used in every CSV, so identical values always print identically.
std::string csv_num(Scalar value);

/// Streaming CSV writer: header on construction, then cell-by-cell rows.
/// Throws std::runtime_error with path context on I/O failure.
class CsvFile {
 public:
  CsvFile(const std::string& path, const std::vector<std::string>& header);
  ~CsvFile();

  CsvFile& cell(const std::string& value);
  CsvFile& cell(const char* value) { return cell(std::string(value)); }
  CsvFile& cell(Scalar value) { return cell(csv_num(value)); }
  CsvFile& cell(int value) { return cell(std::to_string(value)); }
  CsvFile& cell(long value) { return cell(std::to_string(value)); }
  void end_row();

  /// Flushes and closes; throws on write failure. Called by the destructor
  /// (errors swallowed there), so call explicitly when errors matter.
  void close();

 private:
  std::string path_;
  std::ofstream out_;
  bool row_open_ = false;
  bool closed_ = false;
};

/// Writes a dense matrix as CSV with header c0..c{n-1}.
void write_matrix_csv(const std::string& path, const Matrix& values);

/// FNV-1a 64-bit over a byte range.
std::uint64_t fnv1a(const void* data, std::size_t size);

/// FNV-1a 64-bit of a file's contents; throws std::runtime_error on open
/// failure.
std::uint64_t checksum_file(const std::string& path);

/// Collects artifacts and step timings for one CLI invocation and writes
/// out_dir/manifest.json. Artifacts from a previous manifest in the same
/// directory are carried over (checksums replaced for rewritten files), so
/// analysis runs extend the record the train run started.
class RunRecorder {
 public:
  explicit RunRecorder(std::string out_dir);

  /// Registers an emitted file (name relative to out_dir) and checksums it.
  void record(const std::string& name);

  void time_step(const std::string& step, double seconds);

  /// Arbitrary extra metadata, stored under "notes" in the manifest.
  void note(const std::string& key, const std::string& value);

  /// status is "complete" or "failed"; error carries the failure message.
  void write_manifest(const ExperimentConfig& config, const std::string& command,
                      const std::string& status, const std::string& error = "");

  const std::string& out_dir() const { return out_dir_; }
  std::string path(const std::string& name) const { return out_dir_ + "/" + name; }

 private:
  struct Artifact {
    std::string name;
    std::uint64_t checksum = 0;
    std::uint64_t bytes = 0;
  };
  std::string out_dir_;
  std::vector<Artifact> artifacts_;
  std::vector<std::pair<std::string, double>> timings_;
  std::vector<std::pair<std::string, std::string>> notes_;
};

/// Runs fn() and records its wall-clock duration under step.
void timed_step(RunRecorder& recorder, const std::string& step, const std::function<void()>& fn);

}  // namespace erdlab
