#pragma once

#include <string>
#include <vector>

#include "matlift/base_matrix.hpp"
#include "matlift/distributions.hpp"
#include "matlift/graph.hpp"
#include "matlift/lift.hpp"

namespace matlift {

// Text formats. All reals are written with 17 significant digits so every
// file round-trips to the identical double.
//
//   matrix:   "symmetric n"  then "i j value" per nonzero, i < j
//   graph:    "graph n"      then "i j" per edge
//   discrete: "discrete k m" then per atom: probability line, k rows of k
//   lift:     "lift n k"     then per block: "i j coeff", k rows of k

std::string format_real(double x);

BaseMatrix load_matrix(const std::string& path);
void save_matrix(const BaseMatrix& a, const std::string& path);

GraphSpec load_graph(const std::string& path);
void save_graph(const GraphSpec& g, const std::string& path);

LiftDistribution load_discrete(const std::string& path);  // validates the law
void save_discrete(const LiftDistribution& dist, const std::string& path);

LiftedBlockMatrix load_lift(const std::string& path);
void save_lift(const LiftedBlockMatrix& m, const std::string& path);

// Rectangular string table; the CSV boundary of the harness.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

std::string csv_to_string(const ResultTable& t);
void write_csv(const ResultTable& t, const std::string& path);
ResultTable read_csv(const std::string& path);

}  // namespace matlift
