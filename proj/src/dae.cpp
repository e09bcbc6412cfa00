#include "daestruct/dae.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace daestruct {

namespace {

enum class Tok { ident, number, plus, minus, star, slash, caret, lparen, rparen, comma, semi, colon, eq, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_space();
    int line = line_, col = col_;
    if (pos_ >= src_.size()) return {Tok::end, "", line, col};
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        s += take();
      return {Tok::ident, s, line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) s += take();
      if (pos_ < src_.size() && src_[pos_] == '.') {
        s += take();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) s += take();
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        s += take();
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) s += take();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
          throw SyntaxError(line_, col_, "malformed exponent in numeric literal");
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) s += take();
      }
      return {Tok::number, s, line, col};
    }
    take();
    switch (c) {
      case '+': return {Tok::plus, "+", line, col};
      case '-': return {Tok::minus, "-", line, col};
      case '*': return {Tok::star, "*", line, col};
      case '/': return {Tok::slash, "/", line, col};
      case '^': return {Tok::caret, "^", line, col};
      case '(': return {Tok::lparen, "(", line, col};
      case ')': return {Tok::rparen, ")", line, col};
      case ',': return {Tok::comma, ",", line, col};
      case ';': return {Tok::semi, ";", line, col};
      case ':': return {Tok::colon, ":", line, col};
      case '=': return {Tok::eq, "=", line, col};
      default: throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
    }
  }

private:
  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
public:
  explicit Parser(const std::string& src) : lex_(src) { advance(); }

  DaeModel parse() {
    while (cur_.kind != Tok::end) statement();
    return std::move(model_);
  }

private:
  void advance() { cur_ = lex_.next(); }

  Token expect(Tok kind, const char* what) {
    if (cur_.kind != kind)
      throw SyntaxError(cur_.line, cur_.column,
                        std::string("expected ") + what + ", got '" + describe(cur_) + "'");
    Token t = cur_;
    advance();
    return t;
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::end ? "end of input" : t.text;
  }

  void statement() {
    Token head = expect(Tok::ident, "'var', 'input', 'param' or 'eq'");
    if (head.text == "var" || head.text == "input" || head.text == "param") {
      declaration(head.text);
    } else if (head.text == "eq") {
      equation();
    } else {
      throw SyntaxError(head.line, head.column, "unknown statement '" + head.text + "'");
    }
  }

  void declare_name(const Token& name, const std::string& role) {
    if (name.text == "der")
      throw SyntaxError(name.line, name.column, "'der' is reserved and cannot be declared");
    if (roles_.count(name.text))
      throw SyntaxError(name.line, name.column,
                        "'" + name.text + "' already declared as " + roles_[name.text]);
    roles_[name.text] = role;
    if (role == "var") {
      var_index_[name.text] = static_cast<int>(model_.variables.size()) + 1;
      model_.variables.push_back(name.text);
    } else if (role == "input") {
      model_.inputs.push_back(name.text);
    } else {
      model_.params.push_back(name.text);
    }
  }

  void declaration(const std::string& role) {
    declare_name(expect(Tok::ident, "name"), role);
    while (cur_.kind == Tok::comma) {
      advance();
      declare_name(expect(Tok::ident, "name"), role);
    }
    expect(Tok::semi, "';'");
  }

  void equation() {
    Token name = expect(Tok::ident, "equation name");
    if (eq_names_.count(name.text))
      throw SyntaxError(name.line, name.column, "equation '" + name.text + "' already defined");
    eq_names_.insert(name.text);
    expect(Tok::colon, "':'");
    DaeEquation eq;
    eq.name = name.text;
    occurrences_ = &eq.occurrences;
    expression();
    if (cur_.kind == Tok::eq) {
      advance();
      expression();
      if (cur_.kind == Tok::eq)
        throw SyntaxError(cur_.line, cur_.column, "an equation has at most one '='");
    }
    expect(Tok::semi, "';'");
    occurrences_ = nullptr;
    model_.equations.push_back(std::move(eq));
  }

  // expression := term (('+'|'-') term)*
  void expression() {
    term();
    while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
      advance();
      term();
    }
  }

  // term := factor (('*'|'/') factor)*
  void term() {
    factor();
    while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
      advance();
      factor();
    }
  }

  // factor := ('+'|'-')* power;  power := primary ('^' factor)?
  void factor() {
    while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) advance();
    primary();
    if (cur_.kind == Tok::caret) {
      advance();
      factor();
    }
  }

  void primary() {
    if (cur_.kind == Tok::number) {
      advance();
      return;
    }
    if (cur_.kind == Tok::lparen) {
      advance();
      expression();
      expect(Tok::rparen, "')'");
      return;
    }
    Token id = expect(Tok::ident, "identifier, literal or '('");
    if (id.text == "der") {
      int order = der_application(id);
      // der_application records nothing itself; record the final occurrence here.
      occurrences_->push_back({pending_der_var_, order});
      return;
    }
    if (cur_.kind == Tok::lparen) {
      // Opaque function application; a declared variable in function
      // position still occurs at order 0.
      record_if_variable(id);
      advance();
      if (cur_.kind != Tok::rparen) {
        expression();
        while (cur_.kind == Tok::comma) {
          advance();
          expression();
        }
      }
      expect(Tok::rparen, "')'");
      return;
    }
    record_if_variable(id);
  }

  void record_if_variable(const Token& id) {
    auto it = var_index_.find(id.text);
    if (it != var_index_.end()) occurrences_->push_back({it->second, 0});
  }

  // der '(' target (',' integer)? ')'. The target is a variable name or a
  // nested der application; nesting sums the orders. Returns the total
  // order and sets pending_der_var_.
  int der_application(const Token& der_tok) {
    expect(Tok::lparen, "'(' after der");
    int inner = 0;
    if (cur_.kind == Tok::ident && cur_.text == "der") {
      Token nested = cur_;
      advance();
      inner = der_application(nested);
    } else if (cur_.kind == Tok::ident) {
      Token target = cur_;
      advance();
      auto it = var_index_.find(target.text);
      if (it == var_index_.end())
        throw DerOfNonVariable(target.line, target.column, target.text);
      pending_der_var_ = it->second;
    } else {
      throw DerOfNonVariable(cur_.line, cur_.column, describe(cur_));
    }
    int step = 1;
    if (cur_.kind == Tok::comma) {
      advance();
      Token num = expect(Tok::number, "integer derivative order");
      if (num.text.find('.') != std::string::npos || num.text.find('e') != std::string::npos ||
          num.text.find('E') != std::string::npos)
        throw SyntaxError(num.line, num.column, "derivative order must be an integer literal");
      long long k = 0;
      try {
        k = std::stoll(num.text);
      } catch (const std::exception&) {
        throw SyntaxError(num.line, num.column, "derivative order out of range");
      }
      if (k < 1) throw NonPositiveDerOrder(num.line, num.column, k);
      step = static_cast<int>(k);
    }
    expect(Tok::rparen, "')'");
    (void)der_tok;
    return inner + step;
  }

  Lexer lex_;
  Token cur_{Tok::end, "", 0, 0};
  DaeModel model_;
  std::map<std::string, std::string> roles_;
  std::map<std::string, int> var_index_;
  std::set<std::string> eq_names_;
  std::vector<VarOccurrence>* occurrences_ = nullptr;
  int pending_der_var_ = 0;
};

}  // namespace

DaeModel parse_model(const std::string& source) { return Parser(source).parse(); }

SignatureMatrix build_signature(const DaeModel& model) {
  const int neq = static_cast<int>(model.equations.size());
  const int nvar = static_cast<int>(model.variables.size());
  if (neq != nvar) throw NonSquareModel(neq, nvar);

  std::map<std::pair<int, int>, std::int64_t> best;
  for (int i = 0; i < neq; ++i)
    for (const VarOccurrence& occ : model.equations[i].occurrences) {
      auto key = std::make_pair(i + 1, occ.variable);
      auto it = best.find(key);
      if (it == best.end())
        best[key] = occ.order;
      else
        it->second = std::max(it->second, static_cast<std::int64_t>(occ.order));
    }

  std::vector<SigmaTriplet> entries;
  entries.reserve(best.size());
  for (const auto& [key, order] : best) entries.push_back({key.first, key.second, order});

  std::vector<std::string> row_labels;
  row_labels.reserve(neq);
  for (const DaeEquation& eq : model.equations) row_labels.push_back(eq.name);
  return SignatureMatrix::from_triplets(neq, entries, std::move(row_labels), model.variables);
}

}  // namespace daestruct
