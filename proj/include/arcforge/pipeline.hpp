#pragma once

// End-to-end orchestration: ovoid -> tangent spread (cached) -> canonical frame
// -> maximal arc -> minimum-degree curve -> linear factors. Also the JSON
// artifact formats shared with the command-line tool.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "arcforge/curves.hpp"
#include "arcforge/plane.hpp"
#include "arcforge/spreads.hpp"

namespace arcforge {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

/// An error raised inside a pipeline stage; `stage()` names it ("ovoid", "spread", ...).
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

class ConfigError : public PipelineError {
 public:
  explicit ConfigError(const std::string& what) : PipelineError("config", what) {}
};

class SpreadNotFound : public PipelineError {
 public:
  explicit SpreadNotFound(const std::string& what) : PipelineError("spread", what) {}
};

struct PipelineConfig {
  std::uint32_t q = 8;
  OvoidKind kind = OvoidKind::SuzukiTits;
  std::optional<int> max_degree;  // defaults to q^2
  std::optional<fs::path> cache_dir;
  std::optional<fs::path> arc_out;
  std::optional<fs::path> curve_out;
  int verbosity = 0;
};

/// log2 q. Throws ConfigError unless q = 2^m >= 4 (and m odd for Suzuki-Tits).
int validate_config(const PipelineConfig& cfg);

struct StageTiming {
  std::string stage;
  double seconds = 0;
  friend bool operator==(const StageTiming&, const StageTiming&) = default;
};

struct FactorEntry {
  std::string form;
  bool vertical = false;
  Elem a = 0;
  Elem b = 0;
  int multiplicity = 0;
  friend bool operator==(const FactorEntry&, const FactorEntry&) = default;
};

struct PipelineReport {
  std::uint32_t q = 0;
  OvoidKind kind = OvoidKind::SuzukiTits;
  std::uint32_t ovoid_param = 0;
  std::vector<StageTiming> timings;

  std::size_t pg3_points = 0;
  std::size_t pg3_lines = 0;
  std::size_t ovoid_size = 0;
  std::size_t tangents = 0;
  std::size_t spread_size = 0;
  bool spread_cached = false;
  std::size_t arc_size = 0;
  std::map<int, std::size_t> arc_histogram;

  Elem epsilon = 0;
  std::vector<Elem> epsilon_candidates;
  std::string arc_hash;

  std::optional<int> min_degree;
  std::vector<DegreeProbe> probes;
  std::size_t nullity = 0;
  std::string polynomial;
  std::vector<FactorEntry> factors;
  int residual_degree = -1;
  std::size_t residual_zeros = 0;
  std::size_t residual_on_arc = 0;

  bool ovoid_ok = false;
  bool spread_regular = false;
  bool arc_maximal = false;
  bool curve_vanishes = false;
  bool factors_reassemble = false;

  /// Divergences from previously reported values and other remarks.
  std::vector<std::string> notes;

  bool ok() const {
    return ovoid_ok && spread_regular && arc_maximal && curve_vanishes && factors_reassemble && min_degree.has_value();
  }
  friend bool operator==(const PipelineReport&, const PipelineReport&) = default;
};

/// Built once per q: the field tower, PG(3, q) and the point table of PG(3, q^2).
struct Workspace {
  explicit Workspace(int m);
  FieldTower tower;
  Pg3Geometry geometry;
  PointTable ext;
};

std::string spread_cache_name(std::uint32_t q, OvoidKind kind, std::uint32_t param);
json spread_to_json(const Spread& s, const Ovoid& o, const Workspace& w);
/// Validates partition, tangency to `o`, regularity and the carrier before
/// returning; std::nullopt (with a warning on stderr) when anything is off.
std::optional<Spread> spread_from_json(const json& j, const Ovoid& o, const Workspace& w);
std::optional<Spread> spread_cache_get(const fs::path& dir, const Ovoid& o, const Workspace& w);
void spread_cache_put(const fs::path& dir, const Spread& s, const Ovoid& o, const Workspace& w);

/// FNV-1a over the encoded coordinates, as 16 hex digits.
std::string arc_hash(const MaximalArc& arc);
json arc_to_json(const MaximalArc& arc);
/// Throws std::invalid_argument on a malformed document.
MaximalArc arc_from_json(const json& j);

struct CurveArtifact {
  std::uint32_t q = 0;
  BivariatePoly poly;
  std::string arc_hash;
  std::size_t nullity = 0;
  std::vector<DegreeProbe> probes;
};

/// Fits the minimum-degree curve through the arc. std::nullopt if the matrix has
/// full rank for every degree up to max_degree.
std::optional<CurveArtifact> fit_curve(const MaximalArc& arc, int max_degree, const FieldTower& t);
json curve_to_json(const CurveArtifact& c);
CurveArtifact curve_from_json(const json& j);

json split_to_json(const LinearSplit& s, const Field& f);

/// Constructs the arc; fills the build-related fields of `report`.
MaximalArc construct_arc(const PipelineConfig& cfg, const Workspace& w, PipelineReport& report);

PipelineReport run_pipeline(const PipelineConfig& cfg);

enum class ReportFormat { Text, Json };
std::string emit_report(const PipelineReport& r, ReportFormat format);
json report_to_json(const PipelineReport& r);
PipelineReport report_from_json(const json& j);

json read_json(const fs::path& p);
/// Writes `j` with two-space indentation and a trailing newline.
void write_json(const fs::path& p, const json& j);

}  // namespace arcforge
