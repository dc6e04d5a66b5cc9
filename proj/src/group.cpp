#include "quasiortho/group.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace quasiortho {

namespace {

bool is_latin(std::span<const Element> flat, std::size_t n) {
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::size_t r = 0; r < n; ++r) {
    ++stamp;
    for (std::size_t c = 0; c < n; ++c) {
      auto v = flat[r * n + c];
      if (seen[v] == stamp) return false;
      seen[v] = stamp;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    ++stamp;
    for (std::size_t r = 0; r < n; ++r) {
      auto v = flat[r * n + c];
      if (seen[v] == stamp) return false;
      seen[v] = stamp;
    }
  }
  return true;
}

std::string describe(const std::string& label) { return label.empty() ? "table" : label; }

}  // namespace

FiniteGroup FiniteGroup::from_cayley_table(const TableRows& rows, std::string label) {
  using Code = GroupError::Code;
  const std::size_t n = rows.size();
  if (n == 0) throw GroupError(Code::Empty, "Cayley table is empty");
  if (n > kMaxGroupOrder) {
    throw GroupError(Code::TooLarge, "group order " + std::to_string(n) + " exceeds the limit of " +
                                         std::to_string(kMaxGroupOrder));
  }
  FiniteGroup g;
  g.order_ = n;
  g.label_ = std::move(label);
  g.table_.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw GroupError(Code::NotSquare, "row " + std::to_string(r) + " has " +
                                            std::to_string(rows[r].size()) + " entries, expected " +
                                            std::to_string(n));
    }
    for (auto v : rows[r]) {
      if (v >= n) {
        throw GroupError(Code::EntryOutOfRange,
                         "entry " + std::to_string(v) + " in row " + std::to_string(r) + " is out of range");
      }
      g.table_.push_back(v);
    }
  }
  if (!is_latin(g.table_, n)) {
    throw GroupError(Code::NotLatin, describe(g.label_) + " is not a Latin square");
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto xy = g.table_[x * n + y];
      for (std::size_t z = 0; z < n; ++z) {
        const auto yz = g.table_[y * n + z];
        if (g.table_[std::size_t{xy} * n + z] != g.table_[x * n + yz]) {
          throw GroupError(Code::NotAssociative,
                           describe(g.label_) + " is not associative: (" + std::to_string(x) + " " +
                               std::to_string(y) + ") " + std::to_string(z) + " differs");
        }
      }
    }
  }
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool left = true;
    for (std::size_t x = 0; x < n && left; ++x) {
      left = g.table_[e * n + x] == x && g.table_[x * n + e] == x;
    }
    if (left) {
      g.identity_ = static_cast<Element>(e);
      found = true;
    }
  }
  if (!found) throw GroupError(Code::NoIdentity, describe(g.label_) + " has no identity element");

  g.inverse_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (g.table_[x * n + y] == g.identity_) {
        g.inverse_[x] = static_cast<Element>(y);
        break;
      }
    }
  }
  for (std::size_t x = 0; x < n && g.abelian_; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (g.table_[x * n + y] != g.table_[y * n + x]) {
        g.abelian_ = false;
        break;
      }
    }
  }
  return g;
}

std::size_t FiniteGroup::element_order(Element x) const noexcept {
  std::size_t k = 1;
  for (Element y = x; y != identity_; y = op(y, x)) ++k;
  return k;
}

TableRows FiniteGroup::rows() const {
  TableRows out(order_, std::vector<Element>(order_));
  for (std::size_t r = 0; r < order_; ++r) {
    std::copy_n(table_.begin() + static_cast<std::ptrdiff_t>(r * order_), order_, out[r].begin());
  }
  return out;
}

FiniteGroup FiniteGroup::with_label(std::string label) const {
  FiniteGroup g = *this;
  g.label_ = std::move(label);
  return g;
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0 || n > kMaxGroupOrder) {
    throw GroupError(GroupError::Code::BadParameter, "cyclic group order must be in [1, 128]");
  }
  TableRows rows(n, std::vector<Element>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) rows[x][y] = static_cast<Element>((x + y) % n);
  return FiniteGroup::from_cayley_table(rows, "Z" + std::to_string(n));
}

FiniteGroup symmetric_group(std::size_t n) {
  if (n < 1 || n > 5) {
    throw GroupError(GroupError::Code::BadParameter, "symmetric group degree must be in [1, 5]");
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  const auto index_of = [&](const std::vector<int>& q) {
    auto it = std::lower_bound(perms.begin(), perms.end(), q);
    return static_cast<Element>(it - perms.begin());
  };
  const std::size_t m = perms.size();
  TableRows rows(m, std::vector<Element>(m));
  std::vector<int> composed(n);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t i = 0; i < n; ++i) composed[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      rows[a][b] = index_of(composed);
    }
  }
  return FiniteGroup::from_cayley_table(rows, "S" + std::to_string(n));
}

FiniteGroup dihedral_group(std::size_t n) {
  if (n < 3 || 2 * n > kMaxGroupOrder) {
    throw GroupError(GroupError::Code::BadParameter, "dihedral group parameter must be in [3, 64]");
  }
  // r^i s = s r^-i
  const auto mul = [n](std::size_t a, std::size_t b) -> std::size_t {
    const bool sa = a >= n, sb = b >= n;
    const std::size_t i = a % n, j = b % n;
    if (!sb) return (sa ? n : 0) + (i + j) % n;
    return (sa ? 0 : n) + (n - i + j) % n;
  };
  TableRows rows(2 * n, std::vector<Element>(2 * n));
  for (std::size_t a = 0; a < 2 * n; ++a)
    for (std::size_t b = 0; b < 2 * n; ++b) rows[a][b] = static_cast<Element>(mul(a, b));
  return FiniteGroup::from_cayley_table(rows, "D" + std::to_string(n));
}

FiniteGroup quaternion_group() {
  static const TableRows kTable = {
      {0, 1, 2, 3, 4, 5, 6, 7}, {1, 4, 3, 6, 5, 0, 7, 2}, {2, 7, 4, 1, 6, 3, 0, 5},
      {3, 2, 5, 4, 7, 6, 1, 0}, {4, 5, 6, 7, 0, 1, 2, 3}, {5, 0, 7, 2, 1, 4, 3, 6},
      {6, 3, 0, 5, 2, 7, 4, 1}, {7, 6, 1, 0, 3, 2, 5, 4},
  };
  return FiniteGroup::from_cayley_table(kTable, "Q8");
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t gn = g.order(), hn = h.order(), n = gn * hn;
  if (n > kMaxGroupOrder) {
    throw GroupError(GroupError::Code::TooLarge, "direct product order " + std::to_string(n) +
                                                     " exceeds the limit of " +
                                                     std::to_string(kMaxGroupOrder));
  }
  TableRows rows(n, std::vector<Element>(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const auto a = g.op(static_cast<Element>(p / hn), static_cast<Element>(q / hn));
      const auto b = h.op(static_cast<Element>(p % hn), static_cast<Element>(q % hn));
      rows[p][q] = static_cast<Element>(std::size_t{a} * hn + b);
    }
  }
  return FiniteGroup::from_cayley_table(rows, g.label() + "x" + h.label());
}

FiniteGroup group_from_spec(std::string_view spec) {
  const auto bad = [&] {
    return GroupError(GroupError::Code::BadParameter, "unrecognised group spec '" + std::string(spec) + "'");
  };
  if (const auto x = spec.find('x'); x != std::string_view::npos) {
    return direct_product(group_from_spec(spec.substr(0, x)), group_from_spec(spec.substr(x + 1)));
  }
  if (spec.size() < 2) throw bad();
  if (spec == "Q8") return quaternion_group();
  std::size_t n = 0;
  const auto digits = spec.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) throw bad();
  switch (spec.front()) {
    case 'Z': return cyclic_group(n);
    case 'S': return symmetric_group(n);
    case 'D': return dihedral_group(n);
    default: throw bad();
  }
}

TableRows read_table(std::istream& in) {
  std::string line;
  std::vector<std::string> body;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    body.push_back(line);
  }
  if (body.empty()) throw FormatError("table file has no size line");

  const auto parse_ints = [](const std::string& text, std::size_t lineno) {
    std::vector<long long> out;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
      long long v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw FormatError("line " + std::to_string(lineno) + ": '" + tok + "' is not an integer");
      }
      out.push_back(v);
    }
    return out;
  };

  const auto header = parse_ints(body[0], 1);
  if (header.size() != 1 || header[0] <= 0) throw FormatError("first line must hold a single positive n");
  const auto n = static_cast<std::size_t>(header[0]);
  if (n > kMaxGroupOrder) throw FormatError("table order " + std::to_string(n) + " exceeds the limit of 128");
  if (body.size() != n + 1) {
    throw FormatError("expected " + std::to_string(n) + " rows, found " + std::to_string(body.size() - 1));
  }
  TableRows rows(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto vals = parse_ints(body[r + 1], r + 2);
    if (vals.size() != n) {
      throw FormatError("row " + std::to_string(r) + " has " + std::to_string(vals.size()) +
                        " entries, expected " + std::to_string(n));
    }
    rows[r].reserve(n);
    for (auto v : vals) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw FormatError("entry " + std::to_string(v) + " in row " + std::to_string(r) + " is out of range");
      }
      rows[r].push_back(static_cast<Element>(v));
    }
  }
  return rows;
}

void write_table(std::ostream& out, std::span<const Element> flat, std::size_t n, std::string_view header) {
  std::size_t start = 0;
  while (start < header.size()) {
    auto end = header.find('\n', start);
    if (end == std::string_view::npos) end = header.size();
    out << "# " << header.substr(start, end - start) << '\n';
    start = end + 1;
  }
  out << n << '\n';
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c) out << ' ';
      out << flat[r * n + c];
    }
    out << '\n';
  }
}

}  // namespace quasiortho
