#include "polymod/polygraph.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>

namespace polymod {

  char const* to_string(Mode m) {
    switch (m) {
      case Mode::R:
        return "R";
      case Mode::ER:
        return "ER";
      case Mode::RE:
        return "RE";
      case Mode::ERE:
        return "ERE";
    }
    return "?";
  }

  std::optional<Mode> mode_from_string(std::string_view s) {
    if (s == "R") {
      return Mode::R;
    } else if (s == "ER") {
      return Mode::ER;
    } else if (s == "RE") {
      return Mode::RE;
    } else if (s == "ERE") {
      return Mode::ERE;
    }
    return std::nullopt;
  }

  ParseError::ParseError(std::size_t line, std::size_t column, std::string const& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column "
                           + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column),
        detail_(msg) {}

  ////////////////////////////////////////////////////////////////////////
  // Polygraph
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void check_word(Word const&                   w,
                    std::size_t                   n,
                    std::string const&            id) {
      for (Letter x : w) {
        if (x >= n) {
          throw PresentationError("rule " + id + " uses an undeclared generator index "
                                  + std::to_string(x));
        }
      }
    }
  }  // namespace

  Polygraph::Polygraph(std::vector<Generator> generators,
                       std::vector<Rule>      r_rules,
                       std::vector<Rule>      e_rules,
                       Mode                   mode,
                       OrderSpec              order,
                       bool                   modulo_commutation)
      : generators_(std::move(generators)),
        r_rules_(std::move(r_rules)),
        e_rules_(std::move(e_rules)),
        mode_(mode),
        order_(std::move(order)),
        commutation_(modulo_commutation) {
    std::set<std::string> names;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      auto const& g = generators_[i];
      if (g.name.empty()) {
        throw PresentationError("empty generator name");
      }
      if (g.name == "1") {
        throw PresentationError("`1` is reserved for the empty word");
      }
      if (g.index != i) {
        throw PresentationError("generator " + g.name + " has index "
                                + std::to_string(g.index) + ", expected "
                                + std::to_string(i));
      }
      if (!names.insert(g.name).second) {
        throw PresentationError("duplicate generator " + g.name);
      }
    }
    if (order_.precedence().empty() && !generators_.empty()) {
      std::vector<Letter> prec(generators_.size());
      for (std::size_t i = 0; i < prec.size(); ++i) {
        prec[i] = static_cast<Letter>(i);
      }
      order_ = OrderSpec(OrderKind::deglex, std::move(prec));
    }
    if (order_.precedence().size() != generators_.size()) {
      throw PresentationError("order must list every generator exactly once");
    }
    std::set<std::string> ids;
    auto check_rule = [&](Rule const& r, RuleKind kind) {
      if (r.kind != kind) {
        throw PresentationError("rule " + r.id + " is stored with the wrong kind");
      }
      if (r.id.empty()) {
        throw PresentationError("empty rule id");
      }
      if (!ids.insert(r.id).second) {
        throw PresentationError("duplicate rule id " + r.id);
      }
      if (r.lhs.empty()) {
        throw PresentationError("rule " + r.id + " has an empty left-hand side");
      }
      check_word(r.lhs, generators_.size(), r.id);
      check_word(r.rhs, generators_.size(), r.id);
    };
    for (auto const& r : r_rules_) {
      check_rule(r, RuleKind::primary);
    }
    for (auto const& r : e_rules_) {
      check_rule(r, RuleKind::modulo);
    }
  }

  std::optional<RuleRef> Polygraph::find_rule(std::string_view id) const {
    for (std::size_t i = 0; i < r_rules_.size(); ++i) {
      if (r_rules_[i].id == id) {
        return RuleRef{RuleKind::primary, i};
      }
    }
    for (std::size_t i = 0; i < e_rules_.size(); ++i) {
      if (e_rules_[i].id == id) {
        return RuleRef{RuleKind::modulo, i};
      }
    }
    return std::nullopt;
  }

  std::optional<Letter> Polygraph::find_generator(std::string_view name) const {
    for (auto const& g : generators_) {
      if (g.name == name) {
        return static_cast<Letter>(g.index);
      }
    }
    return std::nullopt;
  }

  bool Polygraph::e_is_commutation() const {
    return std::all_of(e_rules_.begin(), e_rules_.end(), [](Rule const& r) {
      return r.lhs.size() == 2 && r.rhs.size() == 2 && r.lhs[0] != r.lhs[1]
             && r.lhs[0] == r.rhs[1] && r.lhs[1] == r.rhs[0];
    });
  }

  bool Polygraph::e_degree_preserving() const {
    return std::all_of(e_rules_.begin(), e_rules_.end(), [](Rule const& r) {
      return r.lhs.size() == r.rhs.size();
    });
  }

  Polygraph Polygraph::with_r_rules(std::vector<Rule> rules) const {
    return Polygraph(generators_, std::move(rules), e_rules_, mode_, order_, commutation_);
  }

  Polygraph Polygraph::with_mode(Mode m) const {
    return Polygraph(generators_, r_rules_, e_rules_, m, order_, commutation_);
  }

  Polygraph Polygraph::with_order(OrderSpec o) const {
    return Polygraph(generators_, r_rules_, e_rules_, mode_, std::move(o), commutation_);
  }

  Polygraph Polygraph::without_e() const {
    return Polygraph(generators_, r_rules_, {}, mode_, order_, false);
  }

  std::string Polygraph::format(Word const& w) const {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += generators_.at(w[i]).name;
    }
    return out;
  }

  Word Polygraph::parse_word(std::vector<std::string> const& tokens) const {
    Word w;
    for (auto const& t : tokens) {
      if (t == "1") {
        continue;
      }
      auto x = find_generator(t);
      if (!x) {
        throw PresentationError("unknown generator " + t);
      }
      w.push_back(*x);
    }
    return w;
  }

  Word Polygraph::parse_word(std::string_view text) const {
    std::vector<std::string> tokens;
    std::istringstream       in{std::string(text)};
    std::string              t;
    while (in >> t) {
      tokens.push_back(t);
    }
    return parse_word(tokens);
  }

  std::string Polygraph::fresh_id(std::string_view prefix) const {
    for (std::size_t n = 0;; ++n) {
      std::string id = std::string(prefix) + std::to_string(n);
      if (!find_rule(id)) {
        return id;
      }
    }
  }

  OrderSpec default_order(Polygraph const& p) {
    if (p.modulo_commutation() && p.declared_order().kind() == OrderKind::deglex) {
      return p.declared_order().with_kind(OrderKind::cdeglex);
    }
    return p.declared_order();
  }

  std::vector<Rule> commutation_rules(std::vector<Generator> const& gens,
                                      std::vector<Letter> const&    precedence) {
    std::vector<Rule> out;
    for (std::size_t i = 0; i < precedence.size(); ++i) {
      for (std::size_t j = i + 1; j < precedence.size(); ++j) {
        Letter hi = precedence[i];
        Letter lo = precedence[j];
        out.push_back(Rule{"alpha_" + gens[hi].name + "_" + gens[lo].name,
                           RuleKind::modulo,
                           Word{hi, lo},
                           Word{lo, hi}});
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Parsing
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct Token {
      std::string text;
      std::size_t column;
    };

    std::vector<Token> tokenize(std::string_view line) {
      std::vector<Token> out;
      std::size_t        i = 0;
      while (i < line.size()) {
        if (line[i] == '#') {
          break;
        }
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
          ++i;
          continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))
               && line[i] != '#') {
          ++i;
        }
        out.push_back(Token{std::string(line.substr(start, i - start)), start + 1});
      }
      return out;
    }

    struct PendingRule {
      std::string        id;
      RuleKind           kind;
      std::vector<Token> lhs;
      std::vector<Token> rhs;
      std::size_t        line;
      std::size_t        id_column;
    };

    class Parser {
     public:
      Polygraph parse(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t pos     = 0;
        while (pos <= text.size()) {
          std::size_t end = text.find('\n', pos);
          if (end == std::string_view::npos) {
            end = text.size();
          }
          ++line_no;
          parse_line(text.substr(pos, end - pos), line_no);
          pos = end + 1;
        }
        return finish();
      }

     private:
      [[noreturn]] void fail(std::size_t line, std::size_t col, std::string const& msg) {
        throw ParseError(line, col, msg);
      }

      // Splits "key:" / "key" ":" and returns the index of the first token
      // after the colon.
      std::size_t expect_colon(std::vector<Token>& toks, std::size_t i, std::size_t line) {
        if (i < toks.size() && toks[i].text.size() > 1 && toks[i].text.back() == ':') {
          toks[i].text.pop_back();
          return i + 1;
        }
        if (i + 1 < toks.size() && toks[i + 1].text == ":") {
          return i + 2;
        }
        if (i < toks.size() && toks[i].text.find(':') != std::string::npos) {
          auto        k    = toks[i].text.find(':');
          std::string rest = toks[i].text.substr(k + 1);
          std::size_t col  = toks[i].column + k + 1;
          toks[i].text     = toks[i].text.substr(0, k);
          toks.insert(toks.begin() + i + 1, Token{rest, col});
          return i + 1;
        }
        std::size_t col = i < toks.size() ? toks[i].column + toks[i].text.size()
                                          : (toks.empty() ? 1 : toks.back().column);
        fail(line, col, "expected `:`");
      }

      void parse_line(std::string_view raw, std::size_t line) {
        auto toks = tokenize(raw);
        if (toks.empty()) {
          return;
        }
        std::string head = toks[0].text;
        if (head.back() == ':') {
          head.pop_back();
        } else if (auto k = head.find(':'); k != std::string::npos) {
          head = head.substr(0, k);
        }
        if (head == "generators") {
          std::size_t i = expect_colon(toks, 0, line);
          if (!generators_.empty()) {
            fail(line, toks[0].column, "generators declared twice");
          }
          for (; i < toks.size(); ++i) {
            auto const& t = toks[i];
            if (t.text == "1") {
              fail(line, t.column, "`1` is reserved for the empty word");
            }
            for (auto const& g : generators_) {
              if (g.name == t.text) {
                fail(line, t.column, "duplicate generator " + t.text);
              }
            }
            generators_.push_back(Generator{t.text, generators_.size()});
          }
          if (generators_.empty()) {
            fail(line, toks[0].column, "no generators declared");
          }
        } else if (head == "order") {
          std::size_t i = expect_colon(toks, 0, line);
          if (i >= toks.size()) {
            fail(line, toks[0].column, "expected order kind");
          }
          auto kind = order_kind_from_string(toks[i].text);
          if (!kind) {
            fail(line, toks[i].column, "unknown order kind " + toks[i].text);
          }
          order_kind_ = *kind;
          order_line_ = line;
          order_names_.clear();
          bool expect_name = true;
          for (++i; i < toks.size(); ++i) {
            if (expect_name) {
              if (toks[i].text == ">") {
                fail(line, toks[i].column, "expected generator name");
              }
              order_names_.push_back(toks[i]);
            } else if (toks[i].text != ">") {
              fail(line, toks[i].column, "expected `>`");
            }
            expect_name = !expect_name;
          }
          if (order_names_.empty() || expect_name) {
            fail(line, toks.back().column, "incomplete order declaration");
          }
        } else if (head == "mode") {
          std::size_t i = expect_colon(toks, 0, line);
          if (i + 1 != toks.size()) {
            fail(line, toks[0].column, "expected exactly one mode");
          }
          auto m = mode_from_string(toks[i].text);
          if (!m) {
            fail(line, toks[i].column, "unknown mode " + toks[i].text);
          }
          mode_ = *m;
        } else if (head == "rule") {
          parse_rule(toks, line, RuleKind::primary, "=>");
        } else if (head == "modulo") {
          if (toks.size() == 2 && toks[1].text == "commutation") {
            commutation_ = true;
            return;
          }
          parse_rule(toks, line, RuleKind::modulo, "==");
        } else {
          fail(line, toks[0].column, "unknown declaration " + toks[0].text);
        }
      }

      void parse_rule(std::vector<Token>& toks,
                      std::size_t         line,
                      RuleKind            kind,
                      std::string const&  arrow) {
        if (toks.size() < 2) {
          fail(line, toks[0].column, "expected rule id");
        }
        std::size_t i = expect_colon(toks, 1, line);
        PendingRule r{toks[1].text, kind, {}, {}, line, toks[1].column};
        if (r.id.empty()) {
          fail(line, toks[1].column, "empty rule id");
        }
        bool seen_arrow = false;
        for (; i < toks.size(); ++i) {
          if (toks[i].text == arrow) {
            if (seen_arrow) {
              fail(line, toks[i].column, "unexpected second `" + arrow + "`");
            }
            seen_arrow = true;
          } else if (toks[i].text == "=>" || toks[i].text == "==") {
            fail(line, toks[i].column, "expected `" + arrow + "`");
          } else {
            (seen_arrow ? r.rhs : r.lhs).push_back(toks[i]);
          }
        }
        if (!seen_arrow) {
          fail(line, toks.back().column + toks.back().text.size(), "expected `" + arrow + "`");
        }
        if (r.lhs.empty() || r.rhs.empty()) {
          fail(line, toks.back().column, "missing side in rule " + r.id + " (use `1` for the empty word)");
        }
        pending_.push_back(std::move(r));
      }

      Word resolve(std::vector<Token> const& toks, std::size_t line) {
        Word w;
        for (auto const& t : toks) {
          if (t.text == "1") {
            continue;
          }
          auto it = index_.find(t.text);
          if (it == index_.end()) {
            fail(line, t.column, "unknown generator " + t.text);
          }
          w.push_back(it->second);
        }
        return w;
      }

      Polygraph finish() {
        if (generators_.empty()) {
          fail(1, 1, "missing `generators:` declaration");
        }
        for (auto const& g : generators_) {
          index_.emplace(g.name, static_cast<Letter>(g.index));
        }
        std::vector<Letter> prec;
        if (!order_names_.empty()) {
          std::vector<bool> seen(generators_.size(), false);
          for (auto const& t : order_names_) {
            auto it = index_.find(t.text);
            if (it == index_.end()) {
              fail(order_line_, t.column, "unknown generator " + t.text);
            }
            if (seen[it->second]) {
              fail(order_line_, t.column, "generator " + t.text + " listed twice in order");
            }
            seen[it->second] = true;
            prec.push_back(it->second);
          }
          if (prec.size() != generators_.size()) {
            fail(order_line_, 1, "order must list every generator exactly once");
          }
        } else {
          for (std::size_t i = 0; i < generators_.size(); ++i) {
            prec.push_back(static_cast<Letter>(i));
          }
        }
        std::vector<Rule>     r_rules, e_rules;
        std::set<std::string> ids;
        for (auto const& pr : pending_) {
          if (!ids.insert(pr.id).second) {
            fail(pr.line, pr.id_column, "duplicate rule id " + pr.id);
          }
          Rule rule{pr.id, pr.kind, resolve(pr.lhs, pr.line), resolve(pr.rhs, pr.line)};
          if (rule.lhs.empty()) {
            fail(pr.line, pr.lhs.front().column, "rule " + pr.id + " has an empty left-hand side");
          }
          (pr.kind == RuleKind::primary ? r_rules : e_rules).push_back(std::move(rule));
        }
        if (commutation_) {
          if (!e_rules.empty()) {
            fail(1, 1, "`modulo commutation` cannot be combined with explicit modulo rules");
          }
          e_rules = commutation_rules(generators_, prec);
          for (auto const& r : e_rules) {
            if (ids.count(r.id)) {
              fail(1, 1, "rule id " + r.id + " clashes with a commutation rule");
            }
          }
        }
        Mode mode = mode_.value_or(e_rules.empty() ? Mode::R : Mode::ERE);
        return Polygraph(std::move(generators_),
                         std::move(r_rules),
                         std::move(e_rules),
                         mode,
                         OrderSpec(order_kind_, std::move(prec)),
                         commutation_);
      }

      std::vector<Generator>                  generators_;
      std::unordered_map<std::string, Letter> index_;
      std::vector<Token>                      order_names_;
      OrderKind                               order_kind_ = OrderKind::deglex;
      std::size_t                             order_line_ = 0;
      std::optional<Mode>                     mode_;
      bool                                    commutation_ = false;
      std::vector<PendingRule>                pending_;
    };
  }  // namespace

  Polygraph parse_presentation(std::string_view text) {
    return Parser().parse(text);
  }

  std::string serialize(Polygraph const& p) {
    std::ostringstream out;
    out << "generators:";
    for (auto const& g : p.generators()) {
      out << ' ' << g.name;
    }
    out << "\norder: " << to_string(p.declared_order().kind());
    auto const& prec = p.declared_order().precedence();
    for (std::size_t i = 0; i < prec.size(); ++i) {
      out << (i == 0 ? " " : " > ") << p.generators()[prec[i]].name;
    }
    out << "\nmode: " << to_string(p.mode()) << '\n';
    for (auto const& r : p.r_rules()) {
      out << "rule " << r.id << ": " << p.format(r.lhs) << " => " << p.format(r.rhs) << '\n';
    }
    if (p.modulo_commutation()) {
      out << "modulo commutation\n";
    } else {
      for (auto const& r : p.e_rules()) {
        out << "modulo " << r.id << ": " << p.format(r.lhs) << " == " << p.format(r.rhs)
            << '\n';
      }
    }
    return out.str();
  }

}  // namespace polymod
