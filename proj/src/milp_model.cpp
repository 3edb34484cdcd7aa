#include <algorithm>
#include <cstdio>
#include <sstream>

#include "eisp/errors.hpp"
#include "eisp/milp.hpp"

namespace eisp {

namespace {

std::string coeff_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

MilpModel::MilpModel(const ProductGraph& graph, Cell current, const RewardField& field,
                     const Rational& lambda, int range)
    : graph_(&graph), grid_(&graph.grid()), current_(current), range_(range) {
  invariant(graph.num_nodes() > 0, "model over an empty product graph");
  invariant(graph.node(graph.initial()).cell == current, "model current cell mismatch");

  int cells = grid_->num_cells();
  field_.resize(cells);
  negative_.resize(cells);
  rho_pow_.assign(cells, std::vector<double>(range + 1));
  for (int i = 0; i < cells; ++i) {
    field_[i] = field.value[i].to_double();
    negative_[i] = field.value[i].is_negative();
    Rational discounted = field.value[i];
    for (int d = 0; d <= range; ++d) {
      rho_pow_[i][d] = discounted.to_double();
      discounted *= lambda;
    }
  }

  build_variables();
  build_constraints();
}

MilpModel build_model(const ProductGraph& pruned_graph, Cell current, const RewardField& field,
                      const Rational& lambda, int range) {
  return MilpModel(pruned_graph, current, field, lambda, range);
}

double MilpModel::rho(Cell observer, Cell observed) const {
  int d = manhattan(observer, observed);
  if (d > range_) return 0.0;
  return rho_pow_[grid_->index_of(observed)][d];
}

void MilpModel::build_variables() {
  const ProductGraph& g = *graph_;
  const GridTs& grid = *grid_;
  int next = 0;

  auto node_name = [&](int u) {
    return u == g.sink() ? std::string("t") : std::to_string(u);
  };
  auto cell_name = [&](int i) {
    Cell c = grid.cell_at(i);
    return std::to_string(c.row) + "_" + std::to_string(c.col);
  };

  zeta_base_.resize(g.num_nodes());
  for (int u = 0; u < g.num_nodes(); ++u) {
    zeta_base_[u] = next;
    for (int v : g.successors(u)) {
      var_names_.push_back("zeta_" + std::to_string(u) + "_" + node_name(v));
      ++next;
    }
  }
  zeta_sink_.resize(g.finals().size());
  for (size_t k = 0; k < g.finals().size(); ++k) {
    zeta_sink_[k] = next++;
    var_names_.push_back("zeta_" + std::to_string(g.finals()[k]) + "_t");
  }
  counts_.edge_flow = next;

  z_base_ = next;
  for (int u = 0; u < g.num_nodes(); ++u) var_names_.push_back("z_" + std::to_string(u));
  var_names_.push_back("z_t");
  next += g.num_nodes() + 1;
  counts_.node_visit = g.num_nodes() + 1;

  y_base_ = next;
  for (int i = 0; i < grid.num_cells(); ++i) var_names_.push_back("y_" + cell_name(i));
  next += grid.num_cells();
  counts_.cell_visit = grid.num_cells();

  sigma_base_.resize(grid.num_cells());
  observers_.resize(grid.num_cells());
  for (int i = 0; i < grid.num_cells(); ++i) {
    sigma_base_[i] = next;
    auto rings = sensing_neighborhood(grid, grid.cell_at(i), range_);
    for (const auto& ring : rings)
      for (Cell obs : ring) observers_[i].push_back(grid.index_of(obs));
    std::sort(observers_[i].begin(), observers_[i].end());
    for (int obs : observers_[i])
      var_names_.push_back("sig_" + cell_name(i) + "__" + cell_name(obs));
    var_names_.push_back("sig_" + cell_name(i) + "__null");
    next += static_cast<int>(observers_[i].size()) + 1;
    counts_.observer += static_cast<int>(observers_[i].size()) + 1;
  }

  t_base_ = next;
  for (int i = 0; i < grid.num_cells(); ++i) var_names_.push_back("t_" + cell_name(i));
  counts_.collected = grid.num_cells();
}

void MilpModel::build_constraints() {
  const ProductGraph& g = *graph_;
  const GridTs& grid = *grid_;

  auto zeta_index = [&](int u, int v) {
    const auto& succ = g.successors(u);
    auto it = std::lower_bound(succ.begin(), succ.end(), v);
    invariant(it != succ.end() && *it == v, "zeta index for a missing edge");
    return zeta_base_[u] + static_cast<int>(it - succ.begin());
  };
  auto zeta_sink_index = [&](int f) {
    const auto& finals = g.finals();
    auto it = std::lower_bound(finals.begin(), finals.end(), f);
    invariant(it != finals.end() && *it == f, "sink edge for a non-final node");
    return zeta_sink_[static_cast<size_t>(it - finals.begin())];
  };
  auto cell_name = [&](int i) {
    Cell c = grid.cell_at(i);
    return std::to_string(c.row) + "_" + std::to_string(c.col);
  };

  // (a) Flow conservation: inflow - outflow = 0, except -1 at the source and
  // +1 at the sink.
  for (int u = 0; u < g.num_nodes(); ++u) {
    MilpConstraint row;
    row.name = "flow_" + std::to_string(u);
    row.sense = 'E';
    row.rhs = u == g.initial() ? -1.0 : 0.0;
    for (int p : g.predecessors(u)) row.terms.push_back({zeta_index(p, u), 1.0});
    for (int v : g.successors(u)) row.terms.push_back({zeta_index(u, v), -1.0});
    if (g.is_final(u)) row.terms.push_back({zeta_sink_index(u), -1.0});
    constraints_.push_back(std::move(row));
  }
  {
    MilpConstraint row;
    row.name = "flow_t";
    row.sense = 'E';
    row.rhs = 1.0;
    for (size_t k = 0; k < g.finals().size(); ++k) row.terms.push_back({zeta_sink_[k], 1.0});
    constraints_.push_back(std::move(row));
  }

  // (b) Node-visit definition: z_u equals the outflow (inflow at the sink).
  for (int u = 0; u < g.num_nodes(); ++u) {
    MilpConstraint row;
    row.name = "zdef_" + std::to_string(u);
    row.sense = 'E';
    row.rhs = 0.0;
    row.terms.push_back({z_base_ + u, 1.0});
    for (int v : g.successors(u)) row.terms.push_back({zeta_index(u, v), -1.0});
    if (g.is_final(u)) row.terms.push_back({zeta_sink_index(u), -1.0});
    constraints_.push_back(std::move(row));
  }
  {
    MilpConstraint row;
    row.name = "zdef_t";
    row.sense = 'E';
    row.rhs = 0.0;
    row.terms.push_back({z_base_ + g.num_nodes(), 1.0});
    for (size_t k = 0; k < g.finals().size(); ++k) row.terms.push_back({zeta_sink_[k], -1.0});
    constraints_.push_back(std::move(row));
  }

  // (c) Cell-visit linking: y_x <= sum of z over the cell's product nodes,
  // y_x >= z_u for each of them.
  std::vector<std::vector<int>> nodes_of_cell(grid.num_cells());
  for (int u = 0; u < g.num_nodes(); ++u)
    nodes_of_cell[grid.index_of(g.node(u).cell)].push_back(u);
  for (int i = 0; i < grid.num_cells(); ++i) {
    MilpConstraint row;
    row.name = "ylink_" + cell_name(i);
    row.sense = 'L';
    row.rhs = 0.0;
    row.terms.push_back({y_base_ + i, 1.0});
    for (int u : nodes_of_cell[i]) row.terms.push_back({z_base_ + u, -1.0});
    constraints_.push_back(std::move(row));
  }
  for (int u = 0; u < g.num_nodes(); ++u) {
    MilpConstraint row;
    row.name = "ycover_" + std::to_string(u);
    row.sense = 'L';
    row.rhs = 0.0;
    row.terms.push_back({z_base_ + u, 1.0});
    row.terms.push_back({y_base_ + grid.index_of(g.node(u).cell), -1.0});
    constraints_.push_back(std::move(row));
  }

  // (d) Collected reward: t_x <= sum over observers of rho * sigma (the null
  // option has rho 0 and no term).
  for (int i = 0; i < grid.num_cells(); ++i) {
    MilpConstraint row;
    row.name = "tdef_" + cell_name(i);
    row.sense = 'L';
    row.rhs = 0.0;
    row.terms.push_back({t_base_ + i, 1.0});
    for (size_t k = 0; k < observers_[i].size(); ++k) {
      double r = rho(grid.cell_at(observers_[i][k]), grid.cell_at(i));
      row.terms.push_back({sigma_base_[i] + static_cast<int>(k), r == 0.0 ? 0.0 : -r});
    }
    constraints_.push_back(std::move(row));
  }

  // (e) Exactly one observer option per cell.
  for (int i = 0; i < grid.num_cells(); ++i) {
    MilpConstraint row;
    row.name = "sigsel_" + cell_name(i);
    row.sense = 'E';
    row.rhs = 1.0;
    for (size_t k = 0; k <= observers_[i].size(); ++k)
      row.terms.push_back({sigma_base_[i] + static_cast<int>(k), 1.0});
    constraints_.push_back(std::move(row));
  }

  // (f) A real observer can only be selected if its cell is visited.
  for (int i = 0; i < grid.num_cells(); ++i) {
    for (size_t k = 0; k < observers_[i].size(); ++k) {
      MilpConstraint row;
      row.name = "sigobs_" + cell_name(i) + "__" + cell_name(observers_[i][k]);
      row.sense = 'L';
      row.rhs = 0.0;
      row.terms.push_back({sigma_base_[i] + static_cast<int>(k), 1.0});
      row.terms.push_back({y_base_ + observers_[i][k], -1.0});
      constraints_.push_back(std::move(row));
    }
  }

  // (g) Negative-reward cells may not escape into the null option: whenever
  // any in-range cell is visited, some real observer must be selected.
  for (int i = 0; i < grid.num_cells(); ++i) {
    if (!negative_[i]) continue;
    for (int obs : observers_[i]) {
      MilpConstraint row;
      row.name = "cover_" + cell_name(i) + "__" + cell_name(obs);
      row.sense = 'G';
      row.rhs = 0.0;
      for (size_t k = 0; k < observers_[i].size(); ++k)
        row.terms.push_back({sigma_base_[i] + static_cast<int>(k), 1.0});
      row.terms.push_back({y_base_ + obs, -1.0});
      constraints_.push_back(std::move(row));
    }
  }
}

std::string MilpModel::export_lp() const {
  const ProductGraph& g = *graph_;
  const GridTs& grid = *grid_;
  std::ostringstream out;
  out << "\\ Receding-horizon step model: " << g.num_nodes() << " product nodes, "
      << g.num_edges() << " edges, grid " << grid.width() << "x" << grid.height() << "\n";
  out << "Maximize\n obj:";
  int on_line = 0;
  for (int i = 0; i < grid.num_cells(); ++i) {
    out << (i == 0 ? " " : " + ") << var_names_[t_base_ + i];
    if (++on_line == 8 && i + 1 < grid.num_cells()) {
      out << "\n     ";
      on_line = 0;
    }
  }
  out << "\nSubject To\n";
  for (const auto& row : constraints_) {
    out << " " << row.name << ":";
    on_line = 0;
    for (size_t k = 0; k < row.terms.size(); ++k) {
      auto [var, coeff] = row.terms[k];
      if (coeff >= 0)
        out << (k == 0 ? " " : " + ");
      else
        out << " - ";
      double mag = coeff < 0 ? -coeff : coeff;
      if (mag != 1.0) out << coeff_text(mag) << " ";
      out << var_names_[var];
      if (++on_line == 8 && k + 1 < row.terms.size()) {
        out << "\n     ";
        on_line = 0;
      }
    }
    if (row.terms.empty()) out << " 0 " << var_names_[0];  // degenerate, keeps LP readers happy
    out << (row.sense == 'L' ? " <= " : row.sense == 'G' ? " >= " : " = ");
    out << coeff_text(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (int i = 0; i < grid.num_cells(); ++i)
    out << " 0 <= " << var_names_[y_base_ + i] << " <= 1\n";
  for (int i = 0; i < grid.num_cells(); ++i)
    out << " " << var_names_[t_base_ + i] << " free\n";
  out << "Binaries\n";
  int per_line = 0;
  std::ostringstream bins;
  for (int v = 0; v < counts_.edge_flow; ++v) {
    bins << " " << var_names_[v];
    if (++per_line == 10) {
      bins << "\n";
      per_line = 0;
    }
  }
  for (int u = 0; u <= g.num_nodes(); ++u) {
    bins << " " << var_names_[z_base_ + u];
    if (++per_line == 10) {
      bins << "\n";
      per_line = 0;
    }
  }
  for (int i = 0; i < grid.num_cells(); ++i) {
    for (size_t k = 0; k <= observers_[i].size(); ++k) {
      bins << " " << var_names_[sigma_base_[i] + static_cast<int>(k)];
      if (++per_line == 10) {
        bins << "\n";
        per_line = 0;
      }
    }
  }
  out << bins.str();
  if (per_line != 0) out << "\n";
  out << "End\n";
  return out.str();
}

}  // namespace eisp
