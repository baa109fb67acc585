#pragma once

#include <iosfwd>
#include <string>

#include "liouville/counterexamples.hpp"
#include "liouville/graph.hpp"
#include "liouville/radial.hpp"

namespace liouville {

// Edge list: "graph v=<count>" then "x y mu" lines; '#' starts a comment.
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const WeightedGraph& g);

// "radial N=<N> horizon=<H>" then "n w_n" lines with normalized weights
// w_n = μ_n (N−1)^n. Two-sided trees put "arm +" before n ≥ 0 and
// "arm -" before n ≤ −1.
AnyRadialTree read_radial(std::istream& in);
void write_radial(std::ostream& out, const RadialTree& t);
void write_radial(std::ostream& out, const TwoSidedRadialTree& t);
void write_radial(std::ostream& out, const AnyRadialTree& t);

// "vertex,value" rows, optional header; every vertex exactly once.
GraphFunction read_function_csv(std::istream& in, std::size_t vertex_count);
GraphFunction read_function_csv_file(const std::string& path, std::size_t vertex_count);
void write_function_csv(std::ostream& out, const GraphFunction& u);

// "layer,value" rows over a contiguous layer range, optional header.
RadialFunction read_layer_function_csv(std::istream& in);
RadialFunction read_layer_function_csv_file(const std::string& path);

// layer,w,u,laplacian,grad,margin
void write_layer_csv(std::ostream& out, const BuiltCounterexample& built, const MarginReport& report);

// Digits that round-trip at the current precision.
int real_digits();

}  // namespace liouville
