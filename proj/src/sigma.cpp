#include "daestruct/sigma.hpp"

#include <algorithm>
#include <sstream>

namespace daestruct {

namespace {

void check_labels(int n, const std::vector<std::string>& labels, const char* side) {
  if (labels.empty()) return;
  if (static_cast<int>(labels.size()) != n)
    throw SizeMismatch(std::string(side) + " label count " + std::to_string(labels.size()) +
                       " does not match size " + std::to_string(n));
}

}  // namespace

SignatureMatrix SignatureMatrix::from_triplets(int n, const std::vector<SigmaTriplet>& entries) {
  return from_triplets(n, entries, {}, {});
}

SignatureMatrix SignatureMatrix::from_triplets(int n, const std::vector<SigmaTriplet>& entries,
                                               std::vector<std::string> row_labels,
                                               std::vector<std::string> col_labels) {
  if (n < 1) throw IndexOutOfRange("matrix size must be >= 1, got " + std::to_string(n));
  check_labels(n, row_labels, "row");
  check_labels(n, col_labels, "column");
  if (row_labels.empty() != col_labels.empty())
    throw SizeMismatch("row and column labels must be given together");

  SignatureMatrix m;
  m.n_ = n;
  m.rows_.resize(n);
  for (const SigmaTriplet& t : entries) {
    if (t.row < 1 || t.row > n || t.col < 1 || t.col > n)
      throw IndexOutOfRange("entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                            ") outside 1.." + std::to_string(n));
    if (t.order < 0)
      throw NegativeOrder("entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                          ") has negative order " + std::to_string(t.order));
    m.rows_[t.row - 1].emplace_back(t.col, t.order);
  }
  for (int i = 0; i < n; ++i) {
    auto& r = m.rows_[i];
    std::sort(r.begin(), r.end());
    for (std::size_t k = 1; k < r.size(); ++k)
      if (r[k].first == r[k - 1].first)
        throw DuplicateEntry("duplicate entry at (" + std::to_string(i + 1) + ", " +
                             std::to_string(r[k].first) + ")");
    for (const auto& [col, order] : r) {
      (void)col;
      m.max_order_ = std::max(m.max_order_, order);
    }
    m.nnz_ += static_cast<int>(r.size());
  }
  m.row_labels_ = std::move(row_labels);
  m.col_labels_ = std::move(col_labels);
  return m;
}

std::optional<std::int64_t> SignatureMatrix::order(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw IndexOutOfRange("(" + std::to_string(i) + ", " + std::to_string(j) + ") outside 1.." +
                          std::to_string(n_));
  const auto& r = rows_[i - 1];
  auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(j, std::int64_t{0}),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it == r.end() || it->first != j) return std::nullopt;
  return it->second;
}

const std::vector<std::pair<int, std::int64_t>>& SignatureMatrix::row(int i) const {
  if (i < 1 || i > n_)
    throw IndexOutOfRange("row " + std::to_string(i) + " outside 1.." + std::to_string(n_));
  return rows_[i - 1];
}

std::vector<SigmaTriplet> SignatureMatrix::triplets() const {
  std::vector<SigmaTriplet> out;
  out.reserve(nnz_);
  for (int i = 1; i <= n_; ++i)
    for (const auto& [col, order] : rows_[i - 1]) out.push_back({i, col, order});
  return out;
}

bool operator==(const SignatureMatrix& a, const SignatureMatrix& b) {
  return a.n_ == b.n_ && a.rows_ == b.rows_ && a.row_labels_ == b.row_labels_ &&
         a.col_labels_ == b.col_labels_;
}

Permutation Permutation::identity(int n) {
  Permutation p;
  p.row_perm.resize(n);
  p.col_perm.resize(n);
  for (int k = 0; k < n; ++k) p.row_perm[k] = p.col_perm[k] = k + 1;
  return p;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.row_perm.assign(row_perm.size(), 0);
  inv.col_perm.assign(col_perm.size(), 0);
  for (std::size_t k = 0; k < row_perm.size(); ++k) inv.row_perm[row_perm[k] - 1] = static_cast<int>(k) + 1;
  for (std::size_t k = 0; k < col_perm.size(); ++k) inv.col_perm[col_perm[k] - 1] = static_cast<int>(k) + 1;
  return inv;
}

namespace {

void check_perm_side(const std::vector<int>& perm, int n, const char* side) {
  if (static_cast<int>(perm.size()) != n)
    throw SizeMismatch(std::string(side) + " permutation length " + std::to_string(perm.size()) +
                       " does not match size " + std::to_string(n));
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 1 || v > n || seen[v - 1])
      throw Error(std::string(side) + " permutation is not a bijection on 1.." + std::to_string(n));
    seen[v - 1] = 1;
  }
}

}  // namespace

SignatureMatrix permute(const SignatureMatrix& m, const Permutation& p) {
  const int n = m.size();
  check_perm_side(p.row_perm, n, "row");
  check_perm_side(p.col_perm, n, "column");

  Permutation inv = p.inverse();
  std::vector<SigmaTriplet> out;
  out.reserve(m.nnz());
  for (const SigmaTriplet& t : m.triplets())
    out.push_back({inv.row_perm[t.row - 1], inv.col_perm[t.col - 1], t.order});

  std::vector<std::string> row_labels, col_labels;
  if (m.has_labels()) {
    row_labels.resize(n);
    col_labels.resize(n);
    for (int k = 0; k < n; ++k) {
      row_labels[k] = m.row_labels()[p.row_perm[k] - 1];
      col_labels[k] = m.col_labels()[p.col_perm[k] - 1];
    }
  }
  return SignatureMatrix::from_triplets(n, out, std::move(row_labels), std::move(col_labels));
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

std::int64_t parse_int(const std::string& tok, int lineno, const char* what) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(lineno, std::string("expected ") + what + ", got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(lineno, std::string("expected ") + what + ", got '" + tok + "'");
  return v;
}

}  // namespace

SignatureMatrix read_sigma_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<std::string> row_labels, col_labels;
  std::vector<SigmaTriplet> entries;

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<std::string> toks = split_tokens(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];

    if (head == "n") {
      if (n != -1) throw ParseError(lineno, "duplicate size header");
      if (toks.size() == 3) {
        // Reserved rectangular header; only the square case has semantics.
        std::int64_t r = parse_int(toks[1], lineno, "row count");
        std::int64_t c = parse_int(toks[2], lineno, "column count");
        if (r != c)
          throw ParseError(lineno, "rectangular size " + std::to_string(r) + " x " +
                                       std::to_string(c) + " is reserved but not supported");
        n = static_cast<int>(r);
      } else if (toks.size() == 2) {
        n = static_cast<int>(parse_int(toks[1], lineno, "size"));
      } else {
        throw ParseError(lineno, "size header needs one (or two equal) integers");
      }
      if (n < 1) throw ParseError(lineno, "size must be >= 1, got " + std::to_string(n));
    } else if (head == "rows" || head == "cols") {
      if (n == -1) throw ParseError(lineno, "'" + head + "' before size header");
      auto& labels = head == "rows" ? row_labels : col_labels;
      if (!labels.empty()) throw ParseError(lineno, "duplicate '" + head + "' line");
      labels.assign(toks.begin() + 1, toks.end());
      if (static_cast<int>(labels.size()) != n)
        throw ParseError(lineno, "'" + head + "' lists " + std::to_string(labels.size()) +
                                     " names, expected " + std::to_string(n));
    } else if (head == "s") {
      if (n == -1) throw ParseError(lineno, "entry before size header");
      if (toks.size() != 4) throw ParseError(lineno, "entry needs 's <row> <col> <order>'");
      std::int64_t i = parse_int(toks[1], lineno, "row index");
      std::int64_t j = parse_int(toks[2], lineno, "column index");
      std::int64_t order = parse_int(toks[3], lineno, "order");
      if (i < 1 || i > n || j < 1 || j > n)
        throw IndexOutOfRange("line " + std::to_string(lineno) + ": entry (" + std::to_string(i) +
                              ", " + std::to_string(j) + ") outside 1.." + std::to_string(n));
      if (order < 0)
        throw NegativeOrder("line " + std::to_string(lineno) + ": entry (" + std::to_string(i) +
                            ", " + std::to_string(j) + ") has negative order " +
                            std::to_string(order));
      entries.push_back({static_cast<int>(i), static_cast<int>(j), order});
    } else {
      throw ParseError(lineno, "unknown directive '" + head + "'");
    }
  }
  if (n == -1) throw ParseError(lineno, "missing size header");
  if (row_labels.empty() != col_labels.empty())
    throw ParseError(lineno, row_labels.empty() ? "'cols' given without 'rows'"
                                                : "'rows' given without 'cols'");
  return SignatureMatrix::from_triplets(n, entries, std::move(row_labels), std::move(col_labels));
}

std::string write_sigma_file(const SignatureMatrix& m) {
  std::ostringstream out;
  out << "n " << m.size() << "\n";
  if (m.has_labels()) {
    out << "rows";
    for (const std::string& s : m.row_labels()) out << " " << s;
    out << "\ncols";
    for (const std::string& s : m.col_labels()) out << " " << s;
    out << "\n";
  }
  for (const SigmaTriplet& t : m.triplets())
    out << "s " << t.row << " " << t.col << " " << t.order << "\n";
  return out.str();
}

}  // namespace daestruct
