#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eisp/errors.hpp"
#include "eisp/milp.hpp"

namespace eisp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Distinct source-to-sink paths always differ at some index (no path is a
// proper prefix of another), so this is a strict total order.
bool path_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Depth-first branch and bound over path prefixes. The incumbent is the
// lexicographically smallest maximum-objective path; subtrees are pruned when
// their bound is below the incumbent, and on an exact tie when no completion
// can be lexicographically smaller. Both rules only discard paths dominated
// by the final incumbent, so the result is a pure function of the instance
// and the parallel variant returns bitwise the same solution as the serial
// one (node/bound counters do vary with scheduling in parallel mode).
class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, const SolveConfig& config)
      : model_(model), g_(model.graph()), grid_(model.grid()), config_(config) {
    parallel_ = config.threads > 1;
    invariant(!(parallel_ && config.validate_bounds),
              "bound validation runs single-threaded");
    precompute();
  }

  MilpSolution run() {
    auto start = std::chrono::steady_clock::now();

    State root;
    root.coverage.assign(grid_.num_cells(), kNegInf);
    root.path.reserve(g_.num_nodes());
    apply_node(g_.initial(), root);
    root.path.push_back(g_.initial());

    dive(root);  // install a first incumbent so node limits still yield a path

    if (parallel_) {
#ifdef _OPENMP
#pragma omp parallel num_threads(config_.threads)
#pragma omp single nowait
      explore(g_.initial(), root, 0);
#else
      explore(g_.initial(), root, 0);
#endif
    } else {
      explore(g_.initial(), root, 0);
    }

    std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    invariant(!best_.path.empty(), "branch and bound finished without any path");

    MilpSolution sol;
    sol.objective = best_.objective;
    sol.product_path = best_.path;
    for (size_t k = 0; k + 1 < sol.product_path.size(); ++k)
      sol.edges.push_back({sol.product_path[k], sol.product_path[k + 1]});
    sol.edges.push_back({sol.product_path.back(), g_.sink()});
    for (int u : sol.product_path) sol.grid_path.push_back(g_.node(u).cell);
    invariant(g_.is_final(sol.product_path.back()), "solution does not end in a final node");
    sol.stats.nodes_explored = nodes_explored_.load();
    sol.stats.bound_evaluations = bound_evaluations_.load();
    sol.stats.wall_ms = elapsed.count();
    sol.stats.optimal = optimal_.load();
    sol.stats.hit_time_limit =
        config_.time_limit_ms > 0.0 && elapsed.count() > config_.time_limit_ms;
    return sol;
  }

 private:
  struct State {
    std::vector<double> coverage;  // per cell: best rho collected, -inf if unseen
    double obs_sum = 0.0;
    std::vector<int> path;
  };

  void precompute() {
    int n = g_.num_nodes();
    int cells = grid_.num_cells();

    cell_obs_.resize(cells);
    for (int i = 0; i < cells; ++i) {
      Cell c = grid_.cell_at(i);
      auto rings = sensing_neighborhood(grid_, c, model_.range());
      for (const auto& ring : rings)
        for (Cell o : ring) cell_obs_[i].push_back({grid_.index_of(o), model_.rho(c, o)});
      std::sort(cell_obs_[i].begin(), cell_obs_[i].end());
    }
    for (int u = 0; u < n; ++u)
      invariant(g_.successors(u).size() <= 4, "grid product node with more than four successors");

    // future_best[u][x]: best rho for cell x over u and its descendants, in
    // reverse topological order (successors have larger indices).
    // additive_gain[u]: path-additive relaxation of the remaining gain; both
    // are admissible, the cheaper one is tried first.
    future_best_.assign(static_cast<size_t>(n) * cells, kNegInf);
    additive_gain_.assign(n, 0.0);
    for (int u = n - 1; u >= 0; --u) {
      double* row = &future_best_[static_cast<size_t>(u) * cells];
      double best_succ = g_.is_final(u) ? 0.0 : kNegInf;
      for (int v : g_.successors(u)) {
        const double* succ = &future_best_[static_cast<size_t>(v) * cells];
        for (int x = 0; x < cells; ++x) row[x] = std::max(row[x], succ[x]);
        best_succ = std::max(best_succ, additive_gain_[v]);
      }
      double alpha_pos = 0.0;
      for (auto [x, rho] : cell_obs_[grid_.index_of(g_.node(u).cell)]) {
        row[x] = std::max(row[x], rho);
        if (rho > 0.0) alpha_pos += rho;
      }
      invariant(best_succ != kNegInf, "non-final node without successors in a pruned graph");
      additive_gain_[u] = alpha_pos + best_succ;
    }
  }

  void apply_node(int u, State& s) const {
    for (auto [x, rho] : cell_obs_[grid_.index_of(g_.node(u).cell)]) {
      double old = s.coverage[x];
      if (rho > old) {
        s.coverage[x] = rho;
        s.obs_sum += rho - (old == kNegInf ? 0.0 : old);
      }
    }
  }

  // Admissible bound for continuing from state s into node v: each cell
  // scores the best of its collected value and the best rho reachable from
  // v; cells never seen may also stay unseen (0).
  double bound_from(const State& s, int v) const {
    const double* row = &future_best_[static_cast<size_t>(v) * grid_.num_cells()];
    double total = 0.0;
    int cells = grid_.num_cells();
    for (int x = 0; x < cells; ++x) {
      double c = s.coverage[x];
      double f = row[x];
      total += c == kNegInf ? (f > 0.0 ? f : 0.0) : (f > c ? f : c);
    }
    return total;
  }

  void offer(double objective, const std::vector<int>& path) {
    if (parallel_) {
      std::lock_guard<std::mutex> lock(best_mutex_);
      offer_locked(objective, path);
    } else {
      offer_locked(objective, path);
    }
  }

  void offer_locked(double objective, const std::vector<int>& path) {
    if (objective > best_.objective ||
        (objective == best_.objective && (best_.path.empty() || path_less(path, best_.path)))) {
      best_.objective = objective;
      best_.path = path;
      best_objective_.store(objective, std::memory_order_relaxed);
    }
  }

  // May a completion of the prefix still tie the incumbent objective with a
  // lexicographically smaller path? Only consulted on exact bound ties.
  bool lex_can_improve(const std::vector<int>& prefix) {
    if (parallel_) {
      std::lock_guard<std::mutex> lock(best_mutex_);
      return lex_can_improve_locked(prefix);
    }
    return lex_can_improve_locked(prefix);
  }

  bool lex_can_improve_locked(const std::vector<int>& prefix) const {
    if (best_.path.empty()) return true;
    size_t k = 0;
    while (k < prefix.size() && k < best_.path.size() && prefix[k] == best_.path[k]) ++k;
    if (k == prefix.size()) return true;  // prefix of the incumbent; may diverge below
    if (k == best_.path.size()) return false;
    return prefix[k] < best_.path[k];
  }

  // Deterministic greedy descent along the best-bound child.
  void dive(State s) {
    int u = g_.initial();
    for (;;) {
      const auto& succ = g_.successors(u);
      if (succ.empty()) break;  // maximal walks end at a final node
      int pick = -1;
      double pick_ub = kNegInf;
      for (int v : succ) {
        double ub = std::min(s.obs_sum + additive_gain_[v], bound_from(s, v));
        if (ub > pick_ub) {
          pick_ub = ub;
          pick = v;
        }
      }
      apply_node(pick, s);
      s.path.push_back(pick);
      u = pick;
    }
    invariant(g_.is_final(u), "greedy dive did not end at a final node");
    offer(s.obs_sum, s.path);
  }

  void count(std::atomic<long long>& counter) {
    if (parallel_)
      counter.fetch_add(1, std::memory_order_relaxed);
    else
      counter.store(counter.load(std::memory_order_relaxed) + 1, std::memory_order_relaxed);
  }

  void explore(int u, State& s, int depth) {
    count(nodes_explored_);
    if (config_.node_limit >= 0 &&
        nodes_explored_.load(std::memory_order_relaxed) > config_.node_limit) {
      optimal_.store(false, std::memory_order_relaxed);
      return;
    }

    if (g_.is_final(u)) {
      offer(s.obs_sum, s.path);
      if (config_.validate_bounds) subtree_best_ = std::max(subtree_best_, s.obs_sum);
    }

    const auto& succ = g_.successors(u);
    if (succ.empty()) return;

    struct Child {
      int v;
      double ub;
    };
    Child children[4];
    int num_children = 0;
    for (int v : succ) {
      count(bound_evaluations_);
      double ub = std::min(s.obs_sum + additive_gain_[v], bound_from(s, v));
      children[num_children++] = {v, ub};
    }
    std::sort(children, children + num_children, [](const Child& a, const Child& b) {
      if (a.ub != b.ub) return a.ub > b.ub;
      return a.v < b.v;
    });

    for (int k = 0; k < num_children; ++k) {
      const Child child = children[k];
      if (!config_.validate_bounds) {
        double best = best_objective_.load(std::memory_order_relaxed);
        if (child.ub < best) break;  // sorted: the rest are no better
        if (child.ub == best) {
          s.path.push_back(child.v);
          bool keep = lex_can_improve(s.path);
          s.path.pop_back();
          if (!keep) continue;
        }
      }

#ifdef _OPENMP
      if (parallel_ && depth < kSpawnDepth) {
        State copy = s;
#pragma omp task firstprivate(copy, child, depth)
        {
          apply_node(child.v, copy);
          copy.path.push_back(child.v);
          explore(child.v, copy, depth + 1);
        }
        continue;
      }
#endif

      std::vector<std::pair<int, double>> undo;
      double old_sum = s.obs_sum;
      for (auto [x, rho] : cell_obs_[grid_.index_of(g_.node(child.v).cell)]) {
        double old = s.coverage[x];
        if (rho > old) {
          undo.push_back({x, old});
          s.coverage[x] = rho;
          s.obs_sum += rho - (old == kNegInf ? 0.0 : old);
        }
      }
      s.path.push_back(child.v);

      if (config_.validate_bounds) {
        double outer = subtree_best_;
        subtree_best_ = kNegInf;
        explore(child.v, s, depth + 1);
        invariant(subtree_best_ <= child.ub + 1e-9,
                  "bound fell below a completed subtree optimum");
        subtree_best_ = std::max(outer, subtree_best_);
      } else {
        explore(child.v, s, depth + 1);
      }

      s.path.pop_back();
      for (auto it = undo.rbegin(); it != undo.rend(); ++it) s.coverage[it->first] = it->second;
      s.obs_sum = old_sum;
    }
  }

  const MilpModel& model_;
  const ProductGraph& g_;
  const GridTs& grid_;
  SolveConfig config_;
  bool parallel_ = false;

  std::vector<std::vector<std::pair<int, double>>> cell_obs_;  // per cell: (cell, rho)
  std::vector<double> future_best_;                            // |V| x |X|
  std::vector<double> additive_gain_;                          // per node

  std::mutex best_mutex_;
  struct {
    double objective = kNegInf;
    std::vector<int> path;
  } best_;
  std::atomic<double> best_objective_{kNegInf};
  std::atomic<long long> nodes_explored_{0};
  std::atomic<long long> bound_evaluations_{0};
  std::atomic<bool> optimal_{true};
  double subtree_best_ = kNegInf;  // validate_bounds bookkeeping (serial only)
  static constexpr int kSpawnDepth = 3;
};

}  // namespace

MilpSolution solve(const MilpModel& model, const SolveConfig& config) {
  BranchAndBound bnb(model, config);
  return bnb.run();
}

MilpSolution oracle_solve(const ProductGraph& graph, Cell current, const RewardField& field,
                          const Rational& lambda, int range, uint64_t max_paths) {
  invariant(graph.node(graph.initial()).cell == current, "oracle current cell mismatch");

  // Count source-to-sink paths first (saturating) and refuse blowups.
  int n = graph.num_nodes();
  std::vector<uint64_t> paths(n, 0);
  const uint64_t kCap = std::numeric_limits<uint64_t>::max();
  for (int u = n - 1; u >= 0; --u) {
    uint64_t total = graph.is_final(u) ? 1 : 0;
    for (int v : graph.successors(u)) {
      uint64_t p = paths[v];
      total = (total > kCap - p) ? kCap : total + p;
    }
    paths[u] = total;
  }
  if (paths[graph.initial()] > max_paths)
    throw ValidationError("oracle path enumeration guard tripped: " +
                          std::to_string(paths[graph.initial()]) + " paths exceed the limit of " +
                          std::to_string(max_paths));

  const GridTs& grid = graph.grid();
  Rational best_obj(0);
  bool have_best = false;
  std::vector<int> best_path;
  std::vector<int> stack_path;
  std::vector<Cell> cells;

  std::function<void(int)> walk;
  walk = [&](int u) {
    stack_path.push_back(u);
    cells.push_back(graph.node(u).cell);
    if (graph.is_final(u)) {
      Rational obj = path_collected_reward(field, grid, cells, lambda, range);
      if (!have_best || obj > best_obj ||
          (obj == best_obj && path_less(stack_path, best_path))) {
        have_best = true;
        best_obj = obj;
        best_path = stack_path;
      }
    }
    for (int v : graph.successors(u)) walk(v);
    stack_path.pop_back();
    cells.pop_back();
  };
  walk(graph.initial());
  invariant(have_best, "oracle found no source-to-sink path");

  MilpSolution sol;
  sol.objective = best_obj.to_double();
  sol.product_path = best_path;
  for (size_t k = 0; k + 1 < best_path.size(); ++k)
    sol.edges.push_back({best_path[k], best_path[k + 1]});
  sol.edges.push_back({best_path.back(), graph.sink()});
  for (int u : best_path) sol.grid_path.push_back(graph.node(u).cell);
  return sol;
}

}  // namespace eisp
