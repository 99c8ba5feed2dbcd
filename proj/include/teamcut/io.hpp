#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "teamcut/instance.hpp"
#include "teamcut/rng.hpp"

namespace teamcut::io {

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip form
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s, const std::string& context) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument(context + ": bad number '" + s + "'");
  return v;
}

inline long parse_int(const std::string& s, const std::string& context) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument(context + ": bad integer '" + s + "'");
  return v;
}

inline std::uint64_t parse_u64(const std::string& s, const std::string& context) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument(context + ": bad integer '" + s + "'");
  return v;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(field);
  for (auto& f : out) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
  }
  return out;
}

inline void require_clean_id(const std::string& id, const std::string& context) {
  if (id.empty()) throw std::invalid_argument(context + ": empty id");
  for (char c : id)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw std::invalid_argument(context + ": id '" + id + "' contains whitespace");
}

/// Write-temp-then-rename so readers never observe partial files.
inline void atomic_write(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << contents;
    if (!out.flush()) throw std::runtime_error("write to '" + tmp + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("rename of '" + tmp + "' failed: " + ec.message());
}

class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw std::runtime_error("cannot open '" + path + "'");
  }
  std::optional<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    return std::nullopt;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(path_ + ":" + std::to_string(number_) + ": " + what);
  }
  int line_number() const { return number_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  int number_ = 0;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// canonical instance format
// ---------------------------------------------------------------------------

/// Serialize to the canonical line-oriented format. Instances built from a
/// balancing factor keep their `alpha` line, so save(load(f)) is
/// byte-identical for canonical files.
inline std::string instance_to_string(const Instance& inst) {
  std::string out = "teamcut-instance v1\n";
  if (inst.alpha())
    out += "alpha " + detail::format_double(*inst.alpha()) + "\n";
  else
    out += "lambda " + detail::format_double(inst.lambda()) + "\n";
  out += "nodes " + std::to_string(inst.num_nodes()) + "\n";
  for (const auto& id : inst.node_ids()) {
    detail::require_clean_id(id, "save_instance");
    out += "node " + id + "\n";
  }
  out += "tasks " + std::to_string(inst.num_tasks()) + "\n";
  for (int t = 0; t < inst.num_tasks(); ++t) {
    detail::require_clean_id(inst.task_id(t), "save_instance");
    out += "task " + inst.task_id(t) + " " + std::to_string(inst.capacity(t)) + "\n";
  }
  out += "edges " + std::to_string(inst.edges().size()) + "\n";
  for (const auto& e : inst.edges())
    out += "edge " + inst.node_id(e.u) + " " + inst.node_id(e.v) + " " + detail::format_double(e.weight) + "\n";
  std::vector<std::string> pref_lines;
  for (int v = 0; v < inst.num_nodes(); ++v)
    for (int t = 0; t < inst.num_tasks(); ++t)
      if (inst.preference(v, t) != 0.0)
        pref_lines.push_back("pref " + inst.node_id(v) + " " + inst.task_id(t) + " " +
                             detail::format_double(inst.preference(v, t)));
  out += "prefs " + std::to_string(pref_lines.size()) + "\n";
  for (const auto& line : pref_lines) out += line + "\n";
  out += "end\n";
  return out;
}

inline void save_instance(const Instance& inst, const std::string& path) {
  detail::atomic_write(path, instance_to_string(inst));
}

inline Instance load_instance(const std::string& path) {
  detail::LineReader reader(path);
  auto expect = [&](const char* what) -> std::vector<std::string> {
    auto line = reader.next();
    if (!line) reader.fail(std::string("unexpected end of file, expected ") + what);
    auto fields = detail::split_ws(*line);
    if (fields.empty()) reader.fail(std::string("blank line, expected ") + what);
    return fields;
  };

  auto header = expect("header");
  if (header.size() != 2 || header[0] != "teamcut-instance" || header[1] != "v1")
    reader.fail("expected 'teamcut-instance v1' header");

  auto lam = expect("lambda or alpha");
  std::optional<double> alpha;
  double lambda = 0.0;
  if (lam.size() == 2 && lam[0] == "lambda")
    lambda = detail::parse_double(lam[1], "lambda");
  else if (lam.size() == 2 && lam[0] == "alpha")
    alpha = detail::parse_double(lam[1], "alpha");
  else
    reader.fail("expected 'lambda <x>' or 'alpha <x>'");

  auto nodes_hdr = expect("nodes count");
  if (nodes_hdr.size() == 2 && (nodes_hdr[0] == "lambda" || nodes_hdr[0] == "alpha"))
    reader.fail("lambda and alpha may not both be given");
  if (nodes_hdr.size() != 2 || nodes_hdr[0] != "nodes") reader.fail("expected 'nodes <n>'");
  const long n = detail::parse_int(nodes_hdr[1], "nodes");
  std::vector<std::string> node_ids;
  for (long i = 0; i < n; ++i) {
    auto f = expect("node line");
    if (f.size() != 2 || f[0] != "node") reader.fail("expected 'node <id>'");
    if (f[0] == "lambda" || f[0] == "alpha") reader.fail("lambda and alpha may not both be given");
    node_ids.push_back(f[1]);
  }

  auto tasks_hdr = expect("tasks count");
  if (tasks_hdr.size() != 2 || tasks_hdr[0] != "tasks") {
    if (tasks_hdr[0] == "lambda" || tasks_hdr[0] == "alpha")
      reader.fail("lambda and alpha may not both be given");
    reader.fail("expected 'tasks <n>'");
  }
  const long t = detail::parse_int(tasks_hdr[1], "tasks");
  std::vector<std::string> task_ids;
  std::vector<int> capacities;
  for (long i = 0; i < t; ++i) {
    auto f = expect("task line");
    if (f.size() != 3 || f[0] != "task") reader.fail("expected 'task <id> <capacity>'");
    task_ids.push_back(f[1]);
    const long cap = detail::parse_int(f[2], "capacity");
    capacities.push_back(static_cast<int>(cap));
  }

  auto edges_hdr = expect("edges count");
  if (edges_hdr.size() != 2 || edges_hdr[0] != "edges") reader.fail("expected 'edges <n>'");
  const long e = detail::parse_int(edges_hdr[1], "edges");
  std::vector<WeightedPair> edges;
  for (long i = 0; i < e; ++i) {
    auto f = expect("edge line");
    if (f.size() != 4 || f[0] != "edge") reader.fail("expected 'edge <u> <v> <w>'");
    edges.push_back({f[1], f[2], detail::parse_double(f[3], "edge weight")});
  }

  auto prefs_hdr = expect("prefs count");
  if (prefs_hdr.size() != 2 || prefs_hdr[0] != "prefs") reader.fail("expected 'prefs <n>'");
  const long p = detail::parse_int(prefs_hdr[1], "prefs");
  std::vector<PrefEntry> prefs;
  for (long i = 0; i < p; ++i) {
    auto f = expect("pref line");
    if (f.size() != 4 || f[0] != "pref") reader.fail("expected 'pref <node> <task> <c>'");
    prefs.push_back({f[1], f[2], detail::parse_double(f[3], "preference")});
  }

  auto tail = expect("end");
  if (tail.size() != 1 || tail[0] != "end") reader.fail("expected 'end'");

  try {
    return Instance(std::move(node_ids), std::move(task_ids), std::move(capacities), edges, prefs, lambda, alpha);
  } catch (const std::invalid_argument& err) {
    throw std::invalid_argument(path + ": " + err.what());
  }
}

// ---------------------------------------------------------------------------
// education data: rankings + friend pairs, conflict graph by complement
// ---------------------------------------------------------------------------

enum class PreferenceFunction { Inverse, LinNorm };

inline const char* to_string(PreferenceFunction fn) {
  return fn == PreferenceFunction::Inverse ? "inverse" : "linnorm";
}

inline double preference_from_rank(PreferenceFunction fn, int rank, int num_tasks) {
  if (fn == PreferenceFunction::Inverse) return 1.0 / static_cast<double>(rank);
  return static_cast<double>(num_tasks - rank + 1) / static_cast<double>(num_tasks);
}

/// Per-individual project rankings (1 = best) and the friend graph.
struct RankingData {
  std::vector<std::string> nodes;
  std::vector<std::string> tasks;
  std::vector<std::vector<int>> rank;            ///< rank[v][t] in 1..|T|
  std::vector<std::pair<int, int>> friend_pairs;  ///< node index pairs, u < v

  int rank_of(int v, int t) const { return rank[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)]; }
};

/// All unordered non-friend pairs with unit weight.
inline std::vector<WeightedPair> friends_to_conflicts(const std::vector<std::pair<std::string, std::string>>& friends,
                                                      const std::vector<std::string>& nodes) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);
  std::set<std::pair<int, int>> friend_set;
  for (const auto& [a, b] : friends) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw std::invalid_argument("friends_to_conflicts: unknown individual '" + a + "'");
    if (ib == index.end()) throw std::invalid_argument("friends_to_conflicts: unknown individual '" + b + "'");
    if (ia->second == ib->second)
      throw std::invalid_argument("friends_to_conflicts: self-loop on '" + a + "'");
    friend_set.insert({std::min(ia->second, ib->second), std::max(ia->second, ib->second)});
  }
  std::vector<WeightedPair> conflicts;
  const int n = static_cast<int>(nodes.size());
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!friend_set.count({u, v}))
        conflicts.push_back({nodes[static_cast<std::size_t>(u)], nodes[static_cast<std::size_t>(v)], 1.0});
  return conflicts;
}

struct EducationOptions {
  PreferenceFunction function = PreferenceFunction::Inverse;
  std::optional<double> alpha;   ///< exactly one of alpha / lambda
  std::optional<double> lambda;
};

struct EducationData {
  Instance instance;
  RankingData rankings;
};

/// Load the education format: a rankings CSV (`node,best,...,worst`), a
/// friend-pair CSV (`u,v`) and a capacities CSV (`task,capacity`). The
/// conflict graph is the complement of the friend graph with unit weights.
inline EducationData load_education(const std::string& rankings_csv, const std::string& friends_csv,
                                    const std::string& capacities_csv, const EducationOptions& options) {
  if (options.alpha.has_value() == options.lambda.has_value())
    throw std::invalid_argument("load_education: exactly one of alpha/lambda must be given");

  std::vector<std::string> tasks;
  std::vector<int> capacities;
  {
    detail::LineReader reader(capacities_csv);
    while (auto line = reader.next()) {
      if (line->empty() || line->front() == '#') continue;
      auto fields = detail::split_csv(*line);
      if (fields.size() != 2) reader.fail("expected 'task,capacity'");
      tasks.push_back(fields[0]);
      capacities.push_back(static_cast<int>(detail::parse_int(fields[1], "capacity")));
    }
  }
  if (tasks.empty()) throw std::invalid_argument(capacities_csv + ": no tasks");
  std::map<std::string, int> task_index;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!task_index.emplace(tasks[i], static_cast<int>(i)).second)
      throw std::invalid_argument(capacities_csv + ": duplicate task '" + tasks[i] + "'");
  }

  RankingData rankings;
  rankings.tasks = tasks;
  {
    detail::LineReader reader(rankings_csv);
    std::set<std::string> seen;
    while (auto line = reader.next()) {
      if (line->empty() || line->front() == '#') continue;
      auto fields = detail::split_csv(*line);
      if (fields.size() != tasks.size() + 1)
        reader.fail("expected 'node," + std::to_string(tasks.size()) + " ranked tasks'");
      if (!seen.insert(fields[0]).second) reader.fail("duplicate individual '" + fields[0] + "'");
      rankings.nodes.push_back(fields[0]);
      std::vector<int> rank(tasks.size(), 0);
      for (std::size_t pos = 1; pos < fields.size(); ++pos) {
        auto it = task_index.find(fields[pos]);
        if (it == task_index.end()) reader.fail("unknown task '" + fields[pos] + "'");
        if (rank[static_cast<std::size_t>(it->second)] != 0) reader.fail("task '" + fields[pos] + "' ranked twice");
        rank[static_cast<std::size_t>(it->second)] = static_cast<int>(pos);
      }
      rankings.rank.push_back(std::move(rank));
    }
  }
  if (rankings.nodes.empty()) throw std::invalid_argument(rankings_csv + ": no individuals");
  std::map<std::string, int> node_index;
  for (std::size_t i = 0; i < rankings.nodes.size(); ++i) node_index[rankings.nodes[i]] = static_cast<int>(i);

  std::vector<std::pair<std::string, std::string>> friend_ids;
  {
    detail::LineReader reader(friends_csv);
    std::set<std::pair<int, int>> seen;
    while (auto line = reader.next()) {
      if (line->empty() || line->front() == '#') continue;
      auto fields = detail::split_csv(*line);
      if (fields.size() != 2) reader.fail("expected 'u,v'");
      auto ia = node_index.find(fields[0]);
      auto ib = node_index.find(fields[1]);
      if (ia == node_index.end()) reader.fail("unknown individual '" + fields[0] + "'");
      if (ib == node_index.end()) reader.fail("unknown individual '" + fields[1] + "'");
      if (ia->second == ib->second) reader.fail("friend self-loop on '" + fields[0] + "'");
      if (!seen.insert({std::min(ia->second, ib->second), std::max(ia->second, ib->second)}).second)
        reader.fail("duplicate friend pair");
      friend_ids.push_back({fields[0], fields[1]});
      rankings.friend_pairs.push_back({std::min(ia->second, ib->second), std::max(ia->second, ib->second)});
    }
  }

  const auto conflicts = friends_to_conflicts(friend_ids, rankings.nodes);
  std::vector<PrefEntry> prefs;
  const int T = static_cast<int>(tasks.size());
  for (std::size_t v = 0; v < rankings.nodes.size(); ++v)
    for (int t = 0; t < T; ++t)
      prefs.push_back({rankings.nodes[v], tasks[static_cast<std::size_t>(t)],
                       preference_from_rank(options.function, rankings.rank[v][static_cast<std::size_t>(t)], T)});

  Instance inst = options.alpha
                      ? Instance(rankings.nodes, tasks, capacities, conflicts, prefs, 0.0, options.alpha)
                      : Instance(rankings.nodes, tasks, capacities, conflicts, prefs, *options.lambda);
  return {std::move(inst), std::move(rankings)};
}

/// Ranking data aligned to an existing instance (for evaluating assignments
/// against education-style metrics). Every instance node must be ranked.
inline RankingData load_rankings(const std::string& rankings_csv, const std::string& friends_csv,
                                 const Instance& inst) {
  RankingData rankings;
  rankings.nodes = inst.node_ids();
  rankings.tasks = inst.task_ids();
  rankings.rank.assign(static_cast<std::size_t>(inst.num_nodes()),
                       std::vector<int>(static_cast<std::size_t>(inst.num_tasks()), 0));
  {
    detail::LineReader reader(rankings_csv);
    std::set<int> seen;
    while (auto line = reader.next()) {
      if (line->empty() || line->front() == '#') continue;
      auto fields = detail::split_csv(*line);
      if (fields.size() != static_cast<std::size_t>(inst.num_tasks()) + 1)
        reader.fail("expected 'node," + std::to_string(inst.num_tasks()) + " ranked tasks'");
      int v = 0;
      try {
        v = inst.node_index(fields[0]);
      } catch (const std::invalid_argument& err) {
        reader.fail(err.what());
      }
      if (!seen.insert(v).second) reader.fail("duplicate individual '" + fields[0] + "'");
      for (std::size_t pos = 1; pos < fields.size(); ++pos) {
        int t = 0;
        try {
          t = inst.task_index(fields[pos]);
        } catch (const std::invalid_argument& err) {
          reader.fail(err.what());
        }
        if (rankings.rank[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)] != 0)
          reader.fail("task '" + fields[pos] + "' ranked twice");
        rankings.rank[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)] = static_cast<int>(pos);
      }
    }
    if (static_cast<int>(seen.size()) != inst.num_nodes())
      throw std::invalid_argument(rankings_csv + ": rankings cover " + std::to_string(seen.size()) + " of " +
                                  std::to_string(inst.num_nodes()) + " individuals");
  }
  {
    detail::LineReader reader(friends_csv);
    std::set<std::pair<int, int>> seen;
    while (auto line = reader.next()) {
      if (line->empty() || line->front() == '#') continue;
      auto fields = detail::split_csv(*line);
      if (fields.size() != 2) reader.fail("expected 'u,v'");
      int a = 0;
      int b = 0;
      try {
        a = inst.node_index(fields[0]);
        b = inst.node_index(fields[1]);
      } catch (const std::invalid_argument& err) {
        reader.fail(err.what());
      }
      if (a == b) reader.fail("friend self-loop on '" + fields[0] + "'");
      if (!seen.insert({std::min(a, b), std::max(a, b)}).second) reader.fail("duplicate friend pair");
      rankings.friend_pairs.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  return rankings;
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

struct CompanyConfig {
  int num_employees = 4000;
  std::vector<std::string> departments = {"IT", "Sales", "HR", "PR"};
  std::vector<double> male_share = {0.70, 0.65, 0.30, 0.35};  ///< mean |male%-female%| = 35%
  double switch_probability = 0.01;
  double capacity_factor = 1.0;  ///< > 1 leaves slack so individuals can move without swapping
  std::optional<double> alpha = 2.0;
};

struct CompanyData {
  Instance instance;
  Assignment initial;         ///< everyone in their home department
  std::vector<bool> is_male;  ///< also encoded in node ids (m_/f_ prefix)
};

/// Employees split evenly over departments with fixed per-department gender
/// shares; conflict edges join all male pairs; c = 1 for the home department
/// and, with 1% probability, for one extra department.
inline CompanyData generate_company(std::uint64_t seed, const CompanyConfig& config = {}) {
  const int D = static_cast<int>(config.departments.size());
  if (D < 2 || static_cast<int>(config.male_share.size()) != D)
    throw std::invalid_argument("generate_company: departments and male_share must align");
  const int per_dept = config.num_employees / D;
  if (per_dept * D != config.num_employees)
    throw std::invalid_argument("generate_company: employees must divide evenly across departments");

  Rng rng(seed);
  std::vector<std::string> node_ids;
  std::vector<bool> is_male;
  std::vector<int> home;
  std::vector<int> males;
  for (int d = 0; d < D; ++d) {
    const int male_count = static_cast<int>(std::lround(config.male_share[static_cast<std::size_t>(d)] * per_dept));
    for (int i = 0; i < per_dept; ++i) {
      const bool male = i < male_count;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%c_%s_%04d", male ? 'm' : 'f',
                    config.departments[static_cast<std::size_t>(d)].c_str(), i);
      node_ids.emplace_back(buf);
      is_male.push_back(male);
      home.push_back(d);
      if (male) males.push_back(static_cast<int>(node_ids.size()) - 1);
    }
  }

  std::vector<WeightedPair> conflicts;
  conflicts.reserve(males.size() * (males.size() - 1) / 2);
  for (std::size_t i = 0; i < males.size(); ++i)
    for (std::size_t j = i + 1; j < males.size(); ++j)
      conflicts.push_back({node_ids[static_cast<std::size_t>(males[i])], node_ids[static_cast<std::size_t>(males[j])], 1.0});

  std::vector<PrefEntry> prefs;
  for (std::size_t v = 0; v < node_ids.size(); ++v) {
    prefs.push_back({node_ids[v], config.departments[static_cast<std::size_t>(home[v])], 1.0});
    if (rng.bernoulli(config.switch_probability)) {
      int other = static_cast<int>(rng.below(static_cast<std::uint64_t>(D - 1)));
      if (other >= home[v]) ++other;
      prefs.push_back({node_ids[v], config.departments[static_cast<std::size_t>(other)], 1.0});
    }
  }

  std::vector<int> capacities(static_cast<std::size_t>(D),
                              static_cast<int>(std::ceil(config.capacity_factor * per_dept)));
  Instance inst = config.alpha ? Instance(node_ids, config.departments, capacities, conflicts, prefs, 0.0, config.alpha)
                               : Instance(node_ids, config.departments, capacities, conflicts, prefs, 0.0);
  return {std::move(inst), Assignment(std::move(home)), std::move(is_male)};
}

struct SynthTFConfig {
  int num_nodes = 1000;
  int num_blocks = 10;
  double p_in = 0.99;    ///< friend probability inside a block
  double p_out = 1e-5;   ///< friend probability across blocks
  std::optional<double> alpha = 10.0;
};

/// Planted-partition friend graph; the conflict graph is its complement with
/// unit weights. Every block shares a primary project (c = 1) and every node
/// additionally likes one uniformly random project.
inline Instance generate_synth_tf(std::uint64_t seed, const SynthTFConfig& config = {}) {
  const int n = config.num_nodes;
  const int B = config.num_blocks;
  if (B < 1 || n % B != 0) throw std::invalid_argument("generate_synth_tf: nodes must divide evenly into blocks");
  const int block_size = n / B;

  Rng rng(seed);
  std::vector<std::string> node_ids;
  std::vector<int> block;
  for (int v = 0; v < n; ++v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "n%05d", v);
    node_ids.emplace_back(buf);
    block.push_back(v / block_size);
  }
  std::vector<std::string> tasks;
  for (int b = 0; b < B; ++b) tasks.push_back("proj" + std::to_string(b));
  std::vector<int> capacities(static_cast<std::size_t>(B), block_size);

  std::vector<WeightedPair> conflicts;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double p = block[static_cast<std::size_t>(u)] == block[static_cast<std::size_t>(v)] ? config.p_in
                                                                                               : config.p_out;
      if (!rng.bernoulli(p)) conflicts.push_back({node_ids[static_cast<std::size_t>(u)], node_ids[static_cast<std::size_t>(v)], 1.0});
    }

  std::vector<PrefEntry> prefs;
  for (int v = 0; v < n; ++v) {
    prefs.push_back({node_ids[static_cast<std::size_t>(v)], tasks[static_cast<std::size_t>(block[static_cast<std::size_t>(v)])], 1.0});
    const int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(B)));
    if (extra != block[static_cast<std::size_t>(v)])
      prefs.push_back({node_ids[static_cast<std::size_t>(v)], tasks[static_cast<std::size_t>(extra)], 1.0});
  }

  return config.alpha ? Instance(node_ids, tasks, capacities, conflicts, prefs, 0.0, config.alpha)
                      : Instance(node_ids, tasks, capacities, conflicts, prefs, 0.0);
}

// ---------------------------------------------------------------------------
// assignment files
// ---------------------------------------------------------------------------

inline std::string assignment_to_string(const Instance& inst, const Assignment& x) {
  std::string out = "teamcut-assignment v1\n";
  for (int v = 0; v < inst.num_nodes(); ++v)
    out += "assign " + inst.node_id(v) + " " + inst.task_id(x.task_of(v)) + "\n";
  out += "end\n";
  return out;
}

inline void save_assignment(const Instance& inst, const Assignment& x, const std::string& path) {
  detail::atomic_write(path, assignment_to_string(inst, x));
}

/// Load a (node, task) pair file, e.g. a manually produced assignment, and
/// validate feasibility against the instance.
inline Assignment load_assignment(const Instance& inst, const std::string& path) {
  detail::LineReader reader(path);
  auto header = reader.next();
  if (!header || detail::split_ws(*header) != std::vector<std::string>{"teamcut-assignment", "v1"})
    reader.fail("expected 'teamcut-assignment v1' header");
  std::vector<int> task_of(static_cast<std::size_t>(inst.num_nodes()), -1);
  bool ended = false;
  while (auto line = reader.next()) {
    auto fields = detail::split_ws(*line);
    if (fields.empty()) continue;
    if (fields.size() == 1 && fields[0] == "end") {
      ended = true;
      break;
    }
    if (fields.size() != 3 || fields[0] != "assign") reader.fail("expected 'assign <node> <task>'");
    int v = 0;
    int t = 0;
    try {
      v = inst.node_index(fields[1]);
      t = inst.task_index(fields[2]);
    } catch (const std::invalid_argument& err) {
      reader.fail(err.what());
    }
    if (task_of[static_cast<std::size_t>(v)] >= 0) reader.fail("individual '" + fields[1] + "' assigned twice");
    task_of[static_cast<std::size_t>(v)] = t;
  }
  if (!ended) throw std::invalid_argument(path + ": missing 'end'");
  for (int v = 0; v < inst.num_nodes(); ++v)
    if (task_of[static_cast<std::size_t>(v)] < 0)
      throw std::invalid_argument(path + ": individual '" + inst.node_id(v) + "' is unassigned");
  Assignment x(std::move(task_of));
  const FeasibilityReport report = feasible(inst, x);
  if (!report.ok) throw std::invalid_argument(path + ": infeasible assignment: " + report.violations.front());
  return x;
}

// ---------------------------------------------------------------------------
// solve reports
// ---------------------------------------------------------------------------

/// Machine-readable outcome of a solver run: objective decomposition,
/// optional relaxation values, per-seed results, metrics and timings, plus a
/// full echo of the configuration for provenance.
struct SolveReport {
  std::string algorithm;
  std::vector<std::pair<std::string, std::string>> config;  // ordered echo
  std::uint64_t seed = 0;
  int repetitions = 1;
  ObjectiveBreakdown objective;
  std::optional<double> lp_value;                  ///< relaxation optimum incl. offset
  std::optional<double> three_quarter_threshold;   ///< 0.75 * L2(y*)
  std::optional<double> mean_value;
  std::optional<double> stddev_value;              ///< population convention
  std::vector<std::pair<std::uint64_t, double>> per_seed;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, double>> timings_seconds;
  std::vector<std::string> notes;
};

inline std::string report_to_string(const SolveReport& r) {
  std::string out = "teamcut-report v1\n";
  out += "algorithm " + r.algorithm + "\n";
  for (const auto& [k, v] : r.config) out += "config " + k + " " + v + "\n";
  out += "seed " + std::to_string(r.seed) + "\n";
  out += "repetitions " + std::to_string(r.repetitions) + "\n";
  out += "objective_task " + detail::format_double(r.objective.task_satisfaction) + "\n";
  out += "objective_social " + detail::format_double(r.objective.social_satisfaction) + "\n";
  out += "objective_total " + detail::format_double(r.objective.total) + "\n";
  if (r.lp_value) out += "lp_value " + detail::format_double(*r.lp_value) + "\n";
  if (r.three_quarter_threshold)
    out += "threequarter_threshold " + detail::format_double(*r.three_quarter_threshold) + "\n";
  if (r.mean_value) out += "mean_value " + detail::format_double(*r.mean_value) + "\n";
  if (r.stddev_value) out += "stddev_value " + detail::format_double(*r.stddev_value) + "\n";
  for (const auto& [s, f] : r.per_seed) out += "per_seed " + std::to_string(s) + " " + detail::format_double(f) + "\n";
  for (const auto& [k, v] : r.metrics) out += "metric " + k + " " + detail::format_double(v) + "\n";
  for (const auto& [k, v] : r.timings_seconds) out += "timing " + k + " " + detail::format_double(v) + "\n";
  for (const auto& n : r.notes) out += "note " + n + "\n";
  out += "end\n";
  return out;
}

inline void save_report(const SolveReport& r, const std::string& path) {
  detail::atomic_write(path, report_to_string(r));
}

inline SolveReport load_report(const std::string& path) {
  detail::LineReader reader(path);
  auto header = reader.next();
  if (!header || detail::split_ws(*header) != std::vector<std::string>{"teamcut-report", "v1"})
    reader.fail("expected 'teamcut-report v1' header");
  SolveReport r;
  bool ended = false;
  while (auto line = reader.next()) {
    auto f = detail::split_ws(*line);
    if (f.empty()) continue;
    const std::string& key = f[0];
    if (key == "end") {
      ended = true;
      break;
    }
    auto want = [&](std::size_t n) {
      if (f.size() != n) reader.fail("malformed '" + key + "' line");
    };
    if (key == "algorithm") {
      want(2);
      r.algorithm = f[1];
    } else if (key == "config") {
      if (f.size() < 3) reader.fail("malformed config line");
      std::string value = f[2];
      for (std::size_t i = 3; i < f.size(); ++i) value += " " + f[i];
      r.config.push_back({f[1], value});
    } else if (key == "seed") {
      want(2);
      r.seed = detail::parse_u64(f[1], "seed");
    } else if (key == "repetitions") {
      want(2);
      r.repetitions = static_cast<int>(detail::parse_int(f[1], "repetitions"));
    } else if (key == "objective_task") {
      want(2);
      r.objective.task_satisfaction = detail::parse_double(f[1], key);
    } else if (key == "objective_social") {
      want(2);
      r.objective.social_satisfaction = detail::parse_double(f[1], key);
    } else if (key == "objective_total") {
      want(2);
      r.objective.total = detail::parse_double(f[1], key);
    } else if (key == "lp_value") {
      want(2);
      r.lp_value = detail::parse_double(f[1], key);
    } else if (key == "threequarter_threshold") {
      want(2);
      r.three_quarter_threshold = detail::parse_double(f[1], key);
    } else if (key == "mean_value") {
      want(2);
      r.mean_value = detail::parse_double(f[1], key);
    } else if (key == "stddev_value") {
      want(2);
      r.stddev_value = detail::parse_double(f[1], key);
    } else if (key == "per_seed") {
      want(3);
      r.per_seed.push_back({detail::parse_u64(f[1], key), detail::parse_double(f[2], key)});
    } else if (key == "metric") {
      want(3);
      r.metrics.push_back({f[1], detail::parse_double(f[2], key)});
    } else if (key == "timing") {
      want(3);
      r.timings_seconds.push_back({f[1], detail::parse_double(f[2], key)});
    } else if (key == "note") {
      std::string note = line->substr(5);
      r.notes.push_back(note);
    } else {
      reader.fail("unknown report field '" + key + "'");
    }
  }
  if (!ended) throw std::invalid_argument(path + ": missing 'end'");
  return r;
}

}  // namespace teamcut::io
