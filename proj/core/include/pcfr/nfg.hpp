#pragma once

#include <Eigen/Dense>

#include "pcfr/game.hpp"

namespace pcfr {

/// Zero-sum game over two finitely generated polytopes.
///
/// Player 1 plays points x in conv(columns of `row_vertices`), player 2
/// plays y in conv(columns of `col_vertices`), and player 1 receives
/// u(x, y) = x^T payoff y. A plain matrix game has identity vertex sets.
struct GeneralizedNFG {
  Eigen::MatrixXd row_vertices;
  Eigen::MatrixXd col_vertices;
  Eigen::MatrixXd payoff;

  static GeneralizedNFG from_matrix(Eigen::MatrixXd payoff);

  Eigen::Index num_row_vertices() const { return row_vertices.cols(); }
  Eigen::Index num_col_vertices() const { return col_vertices.cols(); }

  double value(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return x.dot(payoff * y); }

  // Utility of each player-1 vertex against y, and of each player-2 vertex
  // (as player-1 payoff) against x.
  Eigen::VectorXd row_vertex_values(const Eigen::VectorXd& y) const {
    return row_vertices.transpose() * (payoff * y);
  }
  Eigen::VectorXd col_vertex_values(const Eigen::VectorXd& x) const {
    return col_vertices.transpose() * (payoff.transpose() * x);
  }

  // Throws std::invalid_argument on inconsistent dimensions.
  void check() const;
};

// Extremes of u over the vertex pairs; bilinearity puts them at vertices.
UtilityRange utility_range(const GeneralizedNFG& game);

struct NfgExploitability {
  double best_row_value = 0.0;  // max_x u(x, y)
  double best_col_value = 0.0;  // max_y -u(x, y)
  double value = 0.0;           // u(x, y)
  double total = 0.0;           // sum of both players' gains from deviating
};

NfgExploitability exploitability(const GeneralizedNFG& game, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y);

// Depth-one extensive-form embedding of a plain matrix game: player 1 picks a
// row, then player 2 picks a column without observing it.
ExtensiveFormGame embed_matrix_game(const Eigen::MatrixXd& payoff, std::string name = "matrix");

}  // namespace pcfr
