#include "pcfr/nfg.hpp"

#include <stdexcept>
#include <string>

namespace pcfr {

GeneralizedNFG GeneralizedNFG::from_matrix(Eigen::MatrixXd payoff) {
  GeneralizedNFG game;
  game.row_vertices = Eigen::MatrixXd::Identity(payoff.rows(), payoff.rows());
  game.col_vertices = Eigen::MatrixXd::Identity(payoff.cols(), payoff.cols());
  game.payoff = std::move(payoff);
  return game;
}

void GeneralizedNFG::check() const {
  if (row_vertices.cols() < 1 || col_vertices.cols() < 1) {
    throw std::invalid_argument("each player needs at least one vertex");
  }
  if (payoff.rows() != row_vertices.rows() || payoff.cols() != col_vertices.rows()) {
    throw std::invalid_argument("payoff matrix is " + std::to_string(payoff.rows()) + "x" +
                                std::to_string(payoff.cols()) + " but the ambient spaces are " +
                                std::to_string(row_vertices.rows()) + " and " +
                                std::to_string(col_vertices.rows()));
  }
}

UtilityRange utility_range(const GeneralizedNFG& game) {
  const Eigen::MatrixXd vertex_payoffs = game.row_vertices.transpose() * game.payoff * game.col_vertices;
  UtilityRange range;
  range.min = vertex_payoffs.minCoeff();
  range.max = vertex_payoffs.maxCoeff();
  range.gamma = range.max - range.min;
  return range;
}

NfgExploitability exploitability(const GeneralizedNFG& game, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y) {
  NfgExploitability e;
  e.value = game.value(x, y);
  e.best_row_value = game.row_vertex_values(y).maxCoeff();
  e.best_col_value = -game.col_vertex_values(x).minCoeff();
  e.total = (e.best_row_value - e.value) + (e.best_col_value + e.value);
  return e;
}

ExtensiveFormGame embed_matrix_game(const Eigen::MatrixXd& payoff, std::string name) {
  if (payoff.rows() < 1 || payoff.cols() < 1) throw std::invalid_argument("empty payoff matrix");
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  for (Eigen::Index i = 0; i < payoff.rows(); ++i) rows.push_back("r" + std::to_string(i));
  for (Eigen::Index j = 0; j < payoff.cols(); ++j) cols.push_back("c" + std::to_string(j));

  GameBuilder builder(std::move(name));
  const NodeId root = builder.add_decision(kNoNode, 0, "row", rows);
  for (Eigen::Index i = 0; i < payoff.rows(); ++i) {
    const NodeId h = builder.add_decision(root, 1, "col", cols);
    for (Eigen::Index j = 0; j < payoff.cols(); ++j) builder.add_terminal(h, payoff(i, j));
  }
  return std::move(builder).build();
}

}  // namespace pcfr
