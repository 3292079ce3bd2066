#pragma once

// JSON instance and result documents. Rationals are written as strings
// ("3", "-1/2"); on input, integers, decimal strings and "num/den" strings are
// accepted.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pqstab/discrete.hpp"
#include "pqstab/geometry.hpp"
#include "pqstab/oracles.hpp"
#include "pqstab/pq_params.hpp"
#include "pqstab/stabbing.hpp"

namespace pqstab {

inline constexpr int kFormatVersion = 1;

enum class InstanceKind { Planar, Tree, Poset };

std::string to_string(InstanceKind kind);

struct Provenance {
  std::string generator;
  std::uint64_t seed = 0;
};

struct InstanceFile {
  InstanceKind kind = InstanceKind::Planar;
  int p = 0;
  int q = 0;
  Family polygons;                     // planar
  std::optional<VerticalLine> line;    // planar, optional
  std::optional<Tree> tree;            // tree
  std::optional<Poset> poset;          // poset
  std::vector<ElementSet> sets;        // subtrees or ideals
  std::optional<Provenance> provenance;
  // Load-time notes, e.g. polygons given clockwise and reversed.
  std::vector<std::string> warnings;
};

// Throws InputError whose context names the offending field (and the line
// for JSON syntax errors).
InstanceFile parse_instance(const std::string& text);
std::string dump_instance(const InstanceFile& inst);
// `path` "-" reads standard input.
InstanceFile load_instance(const std::string& path);
void save_instance(const std::string& path, const InstanceFile& inst);

struct ResultFile {
  InstanceKind kind = InstanceKind::Planar;
  int p = 0;
  int q = 0;
  int budget = 0;
  std::string mode;
  std::uint64_t seed = 0;
  std::vector<Point2> points;          // planar
  std::vector<std::size_t> elements;   // tree, poset
  std::vector<std::vector<std::size_t>> coverage;
  std::vector<PQParams> reduction_trail;
  std::vector<std::size_t> uncovered;
  bool promise_violated = false;
  std::string diagnostic;
  std::map<std::string, std::size_t> statistics;
  std::optional<Certificate> certificate;
  // Informational only; kept in its own block so the rest is reproducible.
  std::optional<double> elapsed_ms;

  std::size_t size() const { return kind == InstanceKind::Planar ? points.size() : elements.size(); }
};

template <class Element>
ResultFile make_result_file(InstanceKind kind, int p, int q, const StabbingResult<Element>& r);

std::string dump_result(const ResultFile& r, bool with_timing = true);
ResultFile parse_result(const std::string& text);
ResultFile load_result(const std::string& path);
void save_result(const std::string& path, const ResultFile& r);

// {"intervals": [[lo, hi], ...]}
std::vector<Interval> parse_intervals(const std::string& text);
std::vector<Interval> load_intervals(const std::string& path);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace pqstab
