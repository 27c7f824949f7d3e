#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "graph.hpp"

namespace gbw {

// Edge list: first non-comment line is p, then "i j" pairs (1-based). '#' starts a comment.
Graph parse_edge_list(std::istream& in);
Graph read_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

// graph6, one graph per line. Malformed records report their line number.
Graph parse_graph6(const std::string& record);
std::string to_graph6(const Graph& g);
std::vector<Graph> read_graph6_file(const std::string& path);

// Single line of p ranks, 1-based.
Ordering parse_ordering(std::istream& in, int p);
Ordering read_ordering(const std::string& path, int p);
void write_ordering(std::ostream& out, const Ordering& o);

// Headerless comma separated values, one row per line.
Eigen::MatrixXd parse_csv_matrix(std::istream& in);
Eigen::MatrixXd read_csv_matrix(const std::string& path);
// Square and symmetric within 1e-12 (relative to the largest entry); result is symmetrized.
Eigen::MatrixXd read_symmetric_matrix(const std::string& path);
void write_csv_matrix(std::ostream& out, const Eigen::MatrixXd& m);
void write_csv_matrix(const std::string& path, const Eigen::MatrixXd& m);

std::string format_double(double x);

}  // namespace gbw
