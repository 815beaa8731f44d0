#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pcfr/game.hpp"
#include "pcfr/nfg.hpp"

namespace pcfr {

/// Leduc hold'em over k ranks with two cards per rank.
///
/// Betting per round: check/bet with no bet outstanding, fold/call/raise
/// when facing one. `max_raises_per_round` caps the number of bets plus
/// raises in a round. Player 1 acts first in both rounds.
struct LeducConfig {
  int k = 3;
  double ante = 1.0;
  double round1_bet = 2.0;
  double round2_bet = 4.0;
  int max_raises_per_round = 2;

  // Throws std::invalid_argument.
  void check() const;
};

ExtensiveFormGame build_leduc(const LeducConfig& config = {});

// Three-card Kuhn poker, ante 1, bet 1. Action 0 is pass (check or fold),
// action 1 is bet (bet or call).
ExtensiveFormGame build_kuhn();

class MatrixParseError : public std::runtime_error {
 public:
  MatrixParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class MatrixDimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Format: first line "n m", then n lines of m whitespace-separated payoffs
// for player 1. Blank lines are ignored.
GeneralizedNFG parse_matrix_game(std::istream& in);
GeneralizedNFG parse_matrix_game(std::string_view text);
GeneralizedNFG load_matrix_game(const std::filesystem::path& path);

// "kuhn", "leduc3", "leduc5", "leduc:k=<K>", or "matrix:<path>" (embedded
// as a depth-one game). Throws std::invalid_argument on unknown selectors.
ExtensiveFormGame make_game(std::string_view selector);

}  // namespace pcfr
