#include "pcfr/games.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace pcfr {

void LeducConfig::check() const {
  if (k < 2) throw std::invalid_argument("leduc needs k >= 2 ranks (deck of 2k >= 3 cards)");
  if (!(ante > 0.0) || !(round1_bet > 0.0) || !(round2_bet > 0.0)) {
    throw std::invalid_argument("leduc chip amounts must be positive");
  }
  if (max_raises_per_round < 1) throw std::invalid_argument("leduc needs max_raises_per_round >= 1");
}

namespace {

class LeducBuilder {
 public:
  explicit LeducBuilder(const LeducConfig& config)
      : config_(config), builder_("leduc" + std::to_string(config.k)) {}

  ExtensiveFormGame build() && {
    const int deck = 2 * config_.k;
    std::vector<std::string> labels;
    std::vector<std::array<int, 2>> deals;
    for (int a = 0; a < deck; ++a) {
      for (int b = 0; b < deck; ++b) {
        if (a == b) continue;
        labels.push_back(card_name(a) + "|" + card_name(b));
        deals.push_back({a, b});
      }
    }
    const double p = 1.0 / static_cast<double>(deals.size());
    const NodeId root = builder_.add_chance(kNoNode, labels, std::vector<double>(deals.size(), p));
    for (const auto& deal : deals) {
      Hand hand;
      hand.cards = deal;
      hand.contribution = {config_.ante, config_.ante};
      betting(root, hand, 0, "", 0, false);
    }
    return std::move(builder_).build();
  }

 private:
  struct Hand {
    std::array<int, 2> cards{};
    int community = -1;
    std::array<double, 2> contribution{};
    std::string round1_history;
  };

  static int rank(int card) { return card / 2; }
  static std::string card_name(int card) {
    return std::to_string(rank(card) + 1) + (card % 2 == 0 ? "s" : "h");
  }

  std::string key(const Hand& hand, int player, const std::string& history) const {
    std::string k = std::to_string(rank(hand.cards[static_cast<std::size_t>(player)]) + 1) + ":" +
                    (hand.community < 0 ? history : hand.round1_history);
    if (hand.community >= 0) k += "/" + std::to_string(rank(hand.community) + 1) + ":" + history;
    return k;
  }

  double bet_size(const Hand& hand) const {
    return hand.community < 0 ? config_.round1_bet : config_.round2_bet;
  }

  // `history` is this round's action string; `raises` counts bets + raises.
  void betting(NodeId parent, Hand hand, int player, const std::string& history, int raises,
               bool facing_bet) {
    std::vector<std::string> actions;
    if (facing_bet) actions = {"f", "c"};
    else actions = {"c"};
    if (raises < config_.max_raises_per_round) actions.push_back("r");

    const NodeId node = builder_.add_decision(parent, player, key(hand, player, history), actions);
    const int other = opponent_of(player);
    for (const std::string& action : actions) {
      const std::string next = history + action;
      if (action == "f") {
        const double u = player == 0 ? -hand.contribution[0] : hand.contribution[1];
        builder_.add_terminal(node, u);
      } else if (action == "c") {
        hand_after_call(node, hand, player, next, raises, facing_bet);
      } else {
        Hand raised = hand;
        raised.contribution[static_cast<std::size_t>(player)] =
            hand.contribution[static_cast<std::size_t>(other)] + bet_size(hand);
        betting(node, raised, other, next, raises + 1, true);
      }
    }
  }

  void hand_after_call(NodeId node, Hand hand, int player, const std::string& history, int raises,
                       bool facing_bet) {
    if (facing_bet) {
      hand.contribution[static_cast<std::size_t>(player)] =
          hand.contribution[static_cast<std::size_t>(opponent_of(player))];
    } else if (player == 0) {
      // Check by the first actor: the opponent may still act.
      betting(node, hand, 1, history, raises, false);
      return;
    }
    if (hand.community < 0) {
      deal_community(node, hand, history);
    } else {
      builder_.add_terminal(node, showdown(hand));
    }
  }

  void deal_community(NodeId parent, Hand hand, const std::string& round1_history) {
    std::vector<std::string> labels;
    std::vector<int> cards;
    for (int c = 0; c < 2 * config_.k; ++c) {
      if (c == hand.cards[0] || c == hand.cards[1]) continue;
      labels.push_back(card_name(c));
      cards.push_back(c);
    }
    const double p = 1.0 / static_cast<double>(cards.size());
    const NodeId node = builder_.add_chance(parent, labels, std::vector<double>(cards.size(), p));
    hand.round1_history = round1_history;
    for (int c : cards) {
      Hand next = hand;
      next.community = c;
      betting(node, next, 0, "", 0, false);
    }
  }

  static double showdown(const Hand& hand) {
    const int r0 = rank(hand.cards[0]);
    const int r1 = rank(hand.cards[1]);
    const int board = rank(hand.community);
    int winner = -1;
    if (r0 == board) winner = 0;
    else if (r1 == board) winner = 1;
    else if (r0 > r1) winner = 0;
    else if (r1 > r0) winner = 1;
    if (winner == 0) return hand.contribution[1];
    if (winner == 1) return -hand.contribution[0];
    return 0.0;
  }

  LeducConfig config_;
  GameBuilder builder_;
};

}  // namespace

ExtensiveFormGame build_leduc(const LeducConfig& config) {
  config.check();
  return LeducBuilder(config).build();
}

ExtensiveFormGame build_kuhn() {
  static constexpr std::array<char, 3> kCards{'J', 'Q', 'K'};
  GameBuilder builder("kuhn");
  std::vector<std::string> labels;
  std::vector<std::array<int, 2>> deals;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      labels.push_back(std::string{kCards[static_cast<std::size_t>(a)], kCards[static_cast<std::size_t>(b)]});
      deals.push_back({a, b});
    }
  }
  const NodeId root = builder.add_chance(kNoNode, labels, std::vector<double>(6, 1.0 / 6.0));
  const std::vector<std::string> actions{"p", "b"};

  for (const auto& [c1, c2] : deals) {
    const std::string k1(1, kCards[static_cast<std::size_t>(c1)]);
    const std::string k2(1, kCards[static_cast<std::size_t>(c2)]);
    const double showdown = c1 > c2 ? 1.0 : -1.0;

    const NodeId p1 = builder.add_decision(root, 0, k1, actions);
    // Pass.
    const NodeId p2_after_pass = builder.add_decision(p1, 1, k2 + "p", actions);
    builder.add_terminal(p2_after_pass, showdown);
    const NodeId p1_facing_bet = builder.add_decision(p2_after_pass, 0, k1 + "pb", actions);
    builder.add_terminal(p1_facing_bet, -1.0);
    builder.add_terminal(p1_facing_bet, 2.0 * showdown);
    // Bet.
    const NodeId p2_facing_bet = builder.add_decision(p1, 1, k2 + "b", actions);
    builder.add_terminal(p2_facing_bet, 1.0);
    builder.add_terminal(p2_facing_bet, 2.0 * showdown);
  }
  return std::move(builder).build();
}

MatrixParseError::MatrixParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

double parse_number(const Token& token, int line) {
  double value = 0.0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw MatrixParseError("expected a finite number, got '" + std::string(token.text) + "'", line,
                           token.column);
  }
  return value;
}

long parse_dimension(const Token& token, int line) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(token.text.data(), token.text.data() + token.text.size(), value);
  if (ec != std::errc{} || ptr != token.text.data() + token.text.size() || value < 1) {
    throw MatrixParseError("expected a positive integer, got '" + std::string(token.text) + "'",
                           line, token.column);
  }
  return value;
}

}  // namespace

GeneralizedNFG parse_matrix_game(std::istream& in) {
  std::string line;
  int line_no = 0;
  long rows = 0;
  long cols = 0;
  bool have_header = false;
  std::vector<double> entries;
  long rows_read = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 2) {
        throw MatrixParseError("header must be 'n m'", line_no, tokens.front().column);
      }
      rows = parse_dimension(tokens[0], line_no);
      cols = parse_dimension(tokens[1], line_no);
      have_header = true;
      continue;
    }
    if (rows_read == rows) {
      throw MatrixDimensionError("found more than the declared " + std::to_string(rows) +
                                 " rows (line " + std::to_string(line_no) + ")");
    }
    for (const Token& token : tokens) entries.push_back(parse_number(token, line_no));
    if (static_cast<long>(tokens.size()) != cols) {
      throw MatrixDimensionError("row " + std::to_string(rows_read + 1) + " (line " +
                                 std::to_string(line_no) + ") has " +
                                 std::to_string(tokens.size()) + " entries, expected " +
                                 std::to_string(cols));
    }
    ++rows_read;
  }
  if (!have_header) throw MatrixParseError("missing 'n m' header", line_no + 1, 1);
  if (rows_read != rows) {
    throw MatrixDimensionError("declared " + std::to_string(rows) + " rows, found " +
                               std::to_string(rows_read));
  }

  Eigen::MatrixXd payoff(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) payoff(i, j) = entries[static_cast<std::size_t>(i * cols + j)];
  }
  return GeneralizedNFG::from_matrix(std::move(payoff));
}

GeneralizedNFG parse_matrix_game(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix_game(in);
}

GeneralizedNFG load_matrix_game(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix game file '" + path.string() + "'");
  return parse_matrix_game(in);
}

ExtensiveFormGame make_game(std::string_view selector) {
  if (selector == "kuhn") return build_kuhn();
  if (selector == "leduc3") return build_leduc({.k = 3});
  if (selector == "leduc5") return build_leduc({.k = 5});
  constexpr std::string_view kLeducPrefix = "leduc:k=";
  if (selector.substr(0, kLeducPrefix.size()) == kLeducPrefix) {
    const std::string_view digits = selector.substr(kLeducPrefix.size());
    int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("bad leduc selector '" + std::string(selector) + "'");
    }
    return build_leduc({.k = k});
  }
  constexpr std::string_view kMatrixPrefix = "matrix:";
  if (selector.substr(0, kMatrixPrefix.size()) == kMatrixPrefix) {
    const std::filesystem::path path(std::string(selector.substr(kMatrixPrefix.size())));
    return embed_matrix_game(load_matrix_game(path).payoff, "matrix:" + path.filename().string());
  }
  throw std::invalid_argument("unknown game selector '" + std::string(selector) +
                              "' (expected kuhn, leduc3, leduc5, leduc:k=<K>, matrix:<path>)");
}

}  // namespace pcfr
