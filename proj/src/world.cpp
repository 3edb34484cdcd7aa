#include "eisp/world.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include "eisp/errors.hpp"

namespace eisp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Refinement

Refinement::Refinement(std::vector<std::vector<std::string>> layers,
                       const std::map<std::string, std::string>& parents,
                       const std::map<std::string, std::map<std::string, std::string>>& priors,
                       const std::string& empty_symbol) {
  require(!layers.empty(), "symbols.layers: at least one layer required");
  int depth = static_cast<int>(layers.size()) - 1;
  depth_ = depth;

  for (int d = 0; d <= depth; ++d) {
    require(!layers[d].empty(), "symbols.layers[" + std::to_string(d) + "]: empty layer");
    layers_.emplace_back();
    for (const auto& name : layers[d]) {
      require(name != "ROOT", "symbols.layers: symbol name ROOT is reserved");
      require(by_name_.find(name) == by_name_.end(),
              "symbols.layers: duplicate symbol name " + name);
      SymbolId id = static_cast<SymbolId>(names_.size());
      by_name_[name] = id;
      names_.push_back(name);
      layer_.push_back(d);
      layers_[d].push_back(id);
    }
  }
  root_ = static_cast<SymbolId>(names_.size());
  names_.push_back("ROOT");
  layer_.push_back(depth + 1);
  layers_.emplace_back();
  layers_[depth + 1].push_back(root_);

  parent_.assign(names_.size(), kNoSymbol);
  parent_prior_.assign(names_.size(), Rational(0));
  children_.assign(names_.size(), {});

  for (SymbolId s = 0; s < root_; ++s) {
    auto it = parents.find(names_[s]);
    require(it != parents.end(), "symbols.parents." + names_[s] + ": missing parent");
    SymbolId p;
    if (it->second == "ROOT") {
      p = root_;
    } else {
      auto pit = by_name_.find(it->second);
      require(pit != by_name_.end(), "symbols.parents." + names_[s] + ": unknown symbol " + it->second);
      p = pit->second;
    }
    require(layer_[p] == layer_[s] + 1,
            "symbols.parents." + names_[s] + ": parent must sit one layer above (got " +
                names_[p] + ")");
    parent_[s] = p;
    children_[p].push_back(s);
  }
  for (const auto& [name, _] : parents)
    require(by_name_.find(name) != by_name_.end(), "symbols.parents." + name + ": unknown symbol");

  // Prior rows: one per non-leaf symbol, over exactly its children, summing to 1.
  const Rational tol(1, 1000000000);
  for (SymbolId s = 0; s < static_cast<SymbolId>(names_.size()); ++s) {
    if (layer_[s] == 0) {
      require(priors.find(names_[s]) == priors.end(),
              "symbols.priors." + names_[s] + ": ground-truth symbols have no prior row");
      continue;
    }
    auto it = priors.find(names_[s]);
    require(it != priors.end(), "symbols.priors." + names_[s] + ": missing row");
    require(!children_[s].empty(),
            "symbols.parents: symbol " + names_[s] + " has no refinement below it");
    Rational sum(0);
    std::set<SymbolId> seen;
    for (const auto& [child_name, prob_text] : it->second) {
      auto cit = by_name_.find(child_name);
      require(cit != by_name_.end(),
              "symbols.priors." + names_[s] + "." + child_name + ": unknown symbol");
      SymbolId c = cit->second;
      require(parent_[c] == s, "symbols.priors." + names_[s] + "." + child_name +
                                   ": entry for a symbol whose parent is " + names_[parent_[c]]);
      Rational p = Rational::parse(prob_text);
      require(p.is_positive() && p <= Rational(1),
              "symbols.priors." + names_[s] + "." + child_name + ": probability out of (0,1]");
      parent_prior_[c] = p;
      sum += p;
      seen.insert(c);
    }
    for (SymbolId c : children_[s])
      require(seen.count(c) > 0,
              "symbols.priors." + names_[s] + ": missing entry for child " + names_[c]);
    require((sum - Rational(1)).abs() <= tol,
            "symbols.priors." + names_[s] + ": row sums to " + sum.to_string() + ", expected 1");
  }

  auto eit = by_name_.find(empty_symbol);
  require(eit != by_name_.end(), "symbols.empty: unknown symbol " + empty_symbol);
  empty_ = eit->second;
  require(layer_[empty_] == 0, "symbols.empty: " + empty_symbol + " is not a ground-truth symbol");

  for (auto& l : layers_) std::sort(l.begin(), l.end());
}

SymbolId Refinement::id_of(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) {
    if (name == "ROOT") return root_;
    throw ValidationError("unknown symbol " + name);
  }
  return it->second;
}

const std::string& Refinement::name_of(SymbolId s) const {
  invariant(s >= 0 && s < static_cast<SymbolId>(names_.size()), "symbol id out of range");
  return names_[s];
}

int Refinement::layer(SymbolId s) const {
  invariant(s >= 0 && s < static_cast<SymbolId>(layer_.size()), "symbol id out of range");
  return layer_[s];
}

SymbolId Refinement::ancestor_at_layer(SymbolId ground, int d) const {
  invariant(layer(ground) == 0, "ancestor_at_layer expects a ground-truth symbol");
  invariant(d >= 0 && d <= depth(), "ancestor layer out of range");
  SymbolId s = ground;
  for (int i = 0; i < d; ++i) s = parent_[s];
  return s;
}

bool Refinement::is_descendant(SymbolId a, SymbolId b) const {
  SymbolId s = a;
  while (s != kNoSymbol) {
    if (s == b) return true;
    s = parent_[s];
  }
  return false;
}

// ---------------------------------------------------------------------------
// GridTs

GridTs::GridTs(int width, int height, Cell init, Cell goal)
    : width_(width), height_(height), init_(init), goal_(goal) {
  require(width >= 1 && height >= 1, "grid: dimensions must be positive");
  require(contains(init), "grid.init: outside the grid");
  require(contains(goal), "grid.goal: outside the grid");
  require(init != goal, "grid: init and goal must differ");
}

std::vector<Cell> GridTs::neighbors(Cell c) const {
  invariant(contains(c), "neighbors of a cell outside the grid");
  std::vector<Cell> out;
  out.reserve(4);
  const Cell candidates[4] = {{c.row - 1, c.col}, {c.row, c.col - 1},
                              {c.row, c.col + 1}, {c.row + 1, c.col}};
  for (const Cell& n : candidates)
    if (contains(n)) out.push_back(n);
  return out;
}

int GridTs::weight(Cell a, Cell b) const {
  invariant(contains(a) && contains(b) && manhattan(a, b) == 1,
            "weight queried for a non-adjacent cell pair");
  int ia = index_of(a), ib = index_of(b);
  auto it = weights_.find({std::min(ia, ib), std::max(ia, ib)});
  return it == weights_.end() ? 1 : it->second;
}

void GridTs::set_weight(Cell a, Cell b, int w) {
  require(contains(a) && contains(b) && manhattan(a, b) == 1,
          "grid.weights: entry for a non-adjacent cell pair");
  require(w >= 1, "grid.weights: weights must be >= 1");
  int ia = index_of(a), ib = index_of(b);
  weights_[{std::min(ia, ib), std::max(ia, ib)}] = w;
}

int GridTs::shortest_path_energy(Cell from, Cell to) const {
  std::vector<int> dist(num_cells(), -1);
  using Item = std::pair<int, int>;  // (distance, cell index)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, index_of(from)});
  while (!pq.empty()) {
    auto [d, i] = pq.top();
    pq.pop();
    if (dist[i] != -1) continue;
    dist[i] = d;
    if (i == index_of(to)) return d;
    Cell c = cell_at(i);
    for (Cell n : neighbors(c)) {
      int j = index_of(n);
      if (dist[j] == -1) pq.push({d + weight(c, n), j});
    }
  }
  throw InvariantError("grid is disconnected");  // unreachable on a rectangle
}

std::vector<std::vector<Cell>> sensing_neighborhood(const GridTs& grid, Cell x, int range) {
  invariant(range >= 0, "sensing range must be non-negative");
  std::vector<std::vector<Cell>> rings(range + 1);
  for (int d = 0; d <= range; ++d) {
    for (int dr = -d; dr <= d; ++dr) {
      int rem = d - (dr < 0 ? -dr : dr);
      for (int dc : rem == 0 ? std::vector<int>{0} : std::vector<int>{-rem, rem}) {
        Cell c{x.row + dr, x.col + dc};
        if (grid.contains(c)) rings[d].push_back(c);
      }
    }
    std::sort(rings[d].begin(), rings[d].end());
  }
  return rings;
}

// ---------------------------------------------------------------------------
// Scenario document handling

namespace {

const json& member(const json& obj, const std::string& key, const std::string& path) {
  require(obj.is_object(), path + ": expected an object");
  auto it = obj.find(key);
  require(it != obj.end(), path + "." + key + ": missing");
  return *it;
}

int int_member(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  require(v.is_number_integer(), path + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string string_member(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  require(v.is_string(), path + "." + key + ": expected a string");
  return v.get<std::string>();
}

Cell cell_member(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  require(v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer(),
          path + "." + key + ": expected [row, col]");
  return Cell{v[0].get<int>(), v[1].get<int>()};
}

Rational rational_member(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (v.is_number_integer()) return Rational(v.get<long long>());
  require(v.is_string(), path + "." + key + ": expected a decimal string");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const ValidationError& e) {
    throw ValidationError(path + "." + key + ": " + e.what());
  }
}

json cell_to_json(Cell c) { return json::array({c.row, c.col}); }

}  // namespace

Scenario Scenario::from_document(const json& doc) {
  Scenario s;

  const json& grid = member(doc, "grid", "document");
  int width = int_member(grid, "width", "grid");
  int height = int_member(grid, "height", "grid");
  Cell init = cell_member(grid, "init", "grid");
  Cell goal = cell_member(grid, "goal", "grid");
  s.grid_ = GridTs(width, height, init, goal);

  const json& weights = member(grid, "weights", "grid");
  if (weights.is_string()) {
    require(weights.get<std::string>() == "unit", "grid.weights: expected \"unit\" or a list");
  } else {
    require(weights.is_array(), "grid.weights: expected \"unit\" or a list");
    for (size_t i = 0; i < weights.size(); ++i) {
      const std::string path = "grid.weights[" + std::to_string(i) + "]";
      Cell a = cell_member(weights[i], "from", path);
      Cell b = cell_member(weights[i], "to", path);
      int w = int_member(weights[i], "w", path);
      require(s.grid_.contains(a) && s.grid_.contains(b) && manhattan(a, b) == 1,
              path + ": cells must be adjacent and inside the grid");
      require(w >= 1, path + ": weight must be >= 1");
      s.grid_.set_weight(a, b, w);
    }
  }

  const json& perception = member(doc, "perception", "document");
  s.sensing_range_ = int_member(perception, "D", "perception");
  require(s.sensing_range_ >= 1, "perception.D: must be >= 1");

  const json& symbols = member(doc, "symbols", "document");
  const json& layers_json = member(symbols, "layers", "symbols");
  require(layers_json.is_array() && !layers_json.empty(), "symbols.layers: expected a list of layers");
  std::vector<std::vector<std::string>> layers;
  for (size_t d = 0; d < layers_json.size(); ++d) {
    require(layers_json[d].is_array(), "symbols.layers[" + std::to_string(d) + "]: expected a list");
    std::vector<std::string> layer;
    for (const auto& n : layers_json[d]) {
      require(n.is_string(), "symbols.layers[" + std::to_string(d) + "]: expected symbol names");
      layer.push_back(n.get<std::string>());
    }
    layers.push_back(std::move(layer));
  }
  require(static_cast<int>(layers.size()) == s.sensing_range_ + 1,
          "symbols.layers: refinement must provide exactly D+1 layers (got " +
              std::to_string(layers.size()) + " layers for D=" + std::to_string(s.sensing_range_) +
              ")");

  std::map<std::string, std::string> parents;
  const json& parents_json = member(symbols, "parents", "symbols");
  require(parents_json.is_object(), "symbols.parents: expected an object");
  for (auto it = parents_json.begin(); it != parents_json.end(); ++it) {
    require(it.value().is_string(), "symbols.parents." + it.key() + ": expected a symbol name");
    parents[it.key()] = it.value().get<std::string>();
  }

  std::map<std::string, std::map<std::string, std::string>> priors;
  const json& priors_json = member(symbols, "priors", "symbols");
  require(priors_json.is_object(), "symbols.priors: expected an object");
  for (auto it = priors_json.begin(); it != priors_json.end(); ++it) {
    require(it.value().is_object(), "symbols.priors." + it.key() + ": expected an object");
    for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
      const json& p = jt.value();
      std::string text;
      if (p.is_string())
        text = p.get<std::string>();
      else if (p.is_number_integer())
        text = std::to_string(p.get<long long>());
      else
        throw ValidationError("symbols.priors." + it.key() + "." + jt.key() +
                              ": expected a decimal string");
      priors[it.key()][jt.key()] = text;
    }
  }

  s.refinement_ = Refinement(layers, parents, priors, string_member(symbols, "empty", "symbols"));

  const json& targets = member(doc, "targets", "document");
  const json& list = member(targets, "list", "targets");
  require(list.is_array() && !list.empty(), "targets.list: expected a non-empty list");
  for (const auto& t : list) {
    require(t.is_string(), "targets.list: expected symbol names");
    SymbolId id;
    try {
      id = s.refinement_.id_of(t.get<std::string>());
    } catch (const ValidationError&) {
      throw ValidationError("targets.list: unknown symbol " + t.get<std::string>());
    }
    require(s.refinement_.layer(id) == 0,
            "targets.list: " + t.get<std::string>() + " is not a ground-truth symbol");
    require(id != s.refinement_.empty_symbol(), "targets.list: the empty symbol cannot be a target");
    s.targets_.push_back(id);
  }
  std::sort(s.targets_.begin(), s.targets_.end());
  require(std::adjacent_find(s.targets_.begin(), s.targets_.end()) == s.targets_.end(),
          "targets.list: duplicate entries");

  const json& rewards = member(targets, "rewards", "targets");
  for (SymbolId t : s.targets_) {
    Rational r = rational_member(rewards, s.refinement_.name_of(t), "targets.rewards");
    require(r.is_positive(), "targets.rewards." + s.refinement_.name_of(t) + ": must be positive");
    s.rewards_[t] = r;
  }
  require(rewards.size() == s.targets_.size(),
          "targets.rewards: rewards must be given exactly for the targets");

  const json& energies = member(targets, "energies", "targets");
  require(energies.is_object(), "targets.energies: expected an object");
  for (auto it = energies.begin(); it != energies.end(); ++it) {
    SymbolId id;
    try {
      id = s.refinement_.id_of(it.key());
    } catch (const ValidationError&) {
      throw ValidationError("targets.energies." + it.key() + ": unknown symbol");
    }
    require(s.refinement_.layer(id) == 0, "targets.energies." + it.key() + ": not a ground-truth symbol");
    require(it.value().is_number_integer() && it.value().get<int>() >= 0,
            "targets.energies." + it.key() + ": expected a non-negative integer");
    s.energies_[id] = it.value().get<int>();
  }
  for (SymbolId t : s.targets_) {
    auto it = s.energies_.find(t);
    require(it != s.energies_.end() && it->second > 0,
            "targets.energies." + s.refinement_.name_of(t) +
                ": targets need positive servicing energy");
  }
  for (const auto& [sym, e] : s.energies_) {
    if (!std::binary_search(s.targets_.begin(), s.targets_.end(), sym))
      require(e == 0, "targets.energies." + s.refinement_.name_of(sym) +
                          ": non-targets must have zero servicing energy");
  }

  // Hidden labeling.
  s.hidden_.assign(s.grid_.num_cells(), s.refinement_.empty_symbol());
  const json& placement = member(targets, "placement", "targets");
  if (placement.is_string()) {
    require(placement.get<std::string>() == "random",
            "targets.placement: expected \"random\" or a list");
    s.placement_mode_ = PlacementMode::kRandom;
  } else {
    require(placement.is_array(), "targets.placement: expected \"random\" or a list");
    s.placement_mode_ = PlacementMode::kExplicit;
    std::set<int> used;
    for (size_t i = 0; i < placement.size(); ++i) {
      const std::string path = "targets.placement[" + std::to_string(i) + "]";
      Cell c = cell_member(placement[i], "cell", path);
      require(s.grid_.contains(c), path + ".cell: outside the grid");
      SymbolId sym;
      try {
        sym = s.refinement_.id_of(string_member(placement[i], "symbol", path));
      } catch (const ValidationError&) {
        throw ValidationError(path + ".symbol: unknown symbol");
      }
      require(s.refinement_.layer(sym) == 0, path + ".symbol: not a ground-truth symbol");
      require(used.insert(s.grid_.index_of(c)).second, path + ".cell: duplicate cell");
      s.hidden_[s.grid_.index_of(c)] = sym;
    }
  }

  const json& budget = member(doc, "budget", "document");
  s.energy_budget_ = int_member(budget, "E", "budget");
  require(s.energy_budget_ >= 1, "budget.E: must be positive");
  int goal_energy = s.grid_.shortest_path_energy(s.grid_.init(), s.grid_.goal());
  require(s.energy_budget_ >= goal_energy,
          "budget.E: budget " + std::to_string(s.energy_budget_) +
              " is below the shortest-path energy to the goal (" + std::to_string(goal_energy) +
              ")");

  const json& planner = member(doc, "planner", "document");
  s.lambda_ = rational_member(planner, "lambda", "planner");
  require(s.lambda_.is_positive() && s.lambda_ < Rational(1), "planner.lambda: must lie in (0,1)");
  if (planner.contains("r_epsilon")) {
    s.exploration_reward_ = rational_member(planner, "r_epsilon", "planner");
    require(s.exploration_reward_.is_positive(), "planner.r_epsilon: must be positive");
  } else {
    Rational min_r = s.rewards_.begin()->second;
    for (const auto& [_, r] : s.rewards_) min_r = std::min(min_r, r);
    s.exploration_reward_ = Rational(1, 10) * min_r;
  }
  const json& dist = member(planner, "distribution", "planner");
  require(string_member(dist, "kind", "planner.distribution") == "geometric",
          "planner.distribution.kind: only \"geometric\" is supported");
  s.distribution_p_ = rational_member(dist, "p", "planner.distribution");
  require(s.distribution_p_.is_positive() && s.distribution_p_ <= Rational(1),
          "planner.distribution.p: must lie in (0,1]");

  const json& seed = member(doc, "seed", "document");
  require(seed.is_number_unsigned() || seed.is_number_integer(), "seed: expected an integer");
  s.seed_ = seed.get<uint64_t>();

  return s;
}

bool Scenario::is_target(SymbolId sym) const {
  return std::binary_search(targets_.begin(), targets_.end(), sym);
}

const Rational& Scenario::target_reward(SymbolId sym) const {
  auto it = rewards_.find(sym);
  invariant(it != rewards_.end(), "reward queried for a non-target symbol");
  return it->second;
}

int Scenario::servicing_energy(SymbolId sym) const {
  auto it = energies_.find(sym);
  return it == energies_.end() ? 0 : it->second;
}

int Scenario::min_target_energy() const {
  int best = 0;
  for (SymbolId t : targets_) {
    int e = servicing_energy(t);
    if (best == 0 || e < best) best = e;
  }
  invariant(best > 0, "scenario without targets");
  return best;
}

Rational Scenario::total_target_reward() const {
  Rational sum(0);
  for (SymbolId t : targets_) sum += target_reward(t);
  return sum;
}

SymbolId Scenario::observe(Cell robot, Cell target_cell) const {
  invariant(grid_.contains(robot) && grid_.contains(target_cell),
            "observe outside the grid");
  int d = manhattan(robot, target_cell);
  invariant(d <= sensing_range_, "observe beyond the sensing range");
  return refinement_.ancestor_at_layer(hidden_[grid_.index_of(target_cell)], d);
}

json Scenario::to_document() const {
  json doc;
  doc["budget"] = {{"E", energy_budget_}};

  json grid;
  grid["width"] = grid_.width();
  grid["height"] = grid_.height();
  grid["init"] = cell_to_json(grid_.init());
  grid["goal"] = cell_to_json(grid_.goal());
  if (grid_.unit_weights()) {
    grid["weights"] = "unit";
  } else {
    json list = json::array();
    for (const auto& [key, w] : grid_.explicit_weights()) {
      json entry;
      entry["from"] = cell_to_json(grid_.cell_at(key.first));
      entry["to"] = cell_to_json(grid_.cell_at(key.second));
      entry["w"] = w;
      list.push_back(entry);
    }
    grid["weights"] = list;
  }
  doc["grid"] = grid;

  doc["perception"] = {{"D", sensing_range_}};

  json layers = json::array();
  for (int d = 0; d <= refinement_.depth(); ++d) {
    json layer = json::array();
    for (SymbolId s : refinement_.layer_symbols(d)) layer.push_back(refinement_.name_of(s));
    layers.push_back(layer);
  }
  json parents, priors;
  for (int d = 0; d <= refinement_.depth(); ++d)
    for (SymbolId s : refinement_.layer_symbols(d))
      parents[refinement_.name_of(s)] = refinement_.name_of(refinement_.parent(s));
  for (int d = 1; d <= refinement_.depth() + 1; ++d) {
    for (SymbolId s : refinement_.layer_symbols(d)) {
      json row;
      for (SymbolId c : refinement_.children(s))
        row[refinement_.name_of(c)] = refinement_.edge_prior(c).to_string();
      priors[refinement_.name_of(s)] = row;
    }
  }
  doc["symbols"] = {{"layers", layers},
                    {"parents", parents},
                    {"priors", priors},
                    {"empty", refinement_.name_of(refinement_.empty_symbol())}};

  json targets;
  json list = json::array();
  json rewards, energies;
  for (SymbolId t : targets_) list.push_back(refinement_.name_of(t));
  targets["list"] = list;
  for (SymbolId t : targets_) rewards[refinement_.name_of(t)] = target_reward(t).to_string();
  targets["rewards"] = rewards;
  for (const auto& [sym, e] : energies_) energies[refinement_.name_of(sym)] = e;
  targets["energies"] = energies;
  if (placement_mode_ == PlacementMode::kRandom) {
    targets["placement"] = "random";
  } else {
    json placement = json::array();
    for (int i = 0; i < grid_.num_cells(); ++i) {
      if (hidden_[i] == refinement_.empty_symbol()) continue;
      json entry;
      entry["cell"] = cell_to_json(grid_.cell_at(i));
      entry["symbol"] = refinement_.name_of(hidden_[i]);
      placement.push_back(entry);
    }
    targets["placement"] = placement;
  }
  doc["targets"] = targets;

  doc["planner"] = {{"lambda", lambda_.to_string()},
                    {"r_epsilon", exploration_reward_.to_string()},
                    {"distribution", {{"kind", "geometric"}, {"p", distribution_p_.to_string()}}}};
  doc["seed"] = seed_;
  return doc;
}

std::string Scenario::canonical_text() const { return to_document().dump(); }

uint64_t Scenario::content_hash() const {
  std::string text = canonical_text();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Scenario Scenario::with_placement(const std::vector<std::pair<Cell, SymbolId>>& placement,
                                  uint64_t seed) const {
  json doc = to_document();
  json list = json::array();
  for (const auto& [cell, sym] : placement) {
    json entry;
    entry["cell"] = cell_to_json(cell);
    entry["symbol"] = refinement_.name_of(sym);
    list.push_back(entry);
  }
  doc["targets"]["placement"] = list;
  doc["seed"] = seed;
  return from_document(doc);
}

Scenario load_scenario(const json& doc) { return Scenario::from_document(doc); }

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open scenario file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError("scenario file " + path + ": " + e.what());
  }
  return Scenario::from_document(doc);
}

}  // namespace eisp
