#include "symdesign/partition.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace symdesign {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive: " + str());
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw std::invalid_argument("partition parts must be weakly decreasing: " + str());
    }
  }
  n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        ++i;
      }
      parts.push_back(value);
      continue;
    }
    if (c != '(' && c != ')' && c != '[' && c != ']' && c != ',' && !std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("cannot parse partition '" + std::string(text) + "'");
    }
    ++i;
  }
  if (parts.empty()) throw std::invalid_argument("empty partition '" + std::string(text) + "'");
  return Partition(std::move(parts));
}

Partition Partition::conjugate() const {
  std::vector<int> conj(columns(), 0);
  for (int len : parts_) {
    for (int c = 0; c < len; ++c) ++conj[c];
  }
  return Partition(std::move(conj));
}

std::vector<int> Partition::removable_rows() const {
  std::vector<int> out;
  for (int r = 0; r < rows(); ++r) {
    if (r + 1 == rows() || parts_[r + 1] < parts_[r]) out.push_back(r);
  }
  return out;
}

Partition Partition::remove_box(int row) const {
  std::vector<int> p = parts_;
  --p.at(row);
  return Partition(std::move(p));
}

std::string Partition::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

std::vector<Partition> partitions(int n, int max_rows) {
  if (n < 1 || max_rows < 1) throw std::invalid_argument("partitions: n and max_rows must be positive");
  std::vector<Partition> out;
  std::vector<int> cur;
  // Largest-first recursion yields reverse-lexicographic order directly.
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_rows) return;
    for (int part = std::min(remaining, cap); part >= 1; --part) {
      cur.push_back(part);
      rec(remaining - part, part);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

int count_sectors(int n, int d) { return static_cast<int>(partitions(n, d).size()); }

namespace {

// Exact rational product of small integers via prime exponents.
class PrimeLedger {
 public:
  void multiply(std::int64_t v, int sign) {
    for (std::int64_t p = 2; p * p <= v; ++p) {
      while (v % p == 0) {
        exps_[p] += sign;
        v /= p;
      }
    }
    if (v > 1) exps_[v] += sign;
  }

  std::uint64_t value(const char* what) const {
    std::uint64_t result = 1;
    for (const auto& [p, e] : exps_) {
      if (e < 0) throw std::logic_error(std::string(what) + ": non-integral quotient");
      for (int i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(result, static_cast<std::uint64_t>(p), &result)) {
          throw std::overflow_error(std::string(what) + ": result exceeds 64 bits");
        }
      }
    }
    return result;
  }

 private:
  std::map<std::int64_t, int> exps_;
};

int hook(const Partition& lambda, const Partition& conj, int r, int c) {
  return (lambda.row_length(r) - c - 1) + (conj.row_length(c) - r - 1) + 1;
}

}  // namespace

std::uint64_t dim_irrep(const Partition& lambda) {
  PrimeLedger ledger;
  for (int i = 2; i <= lambda.size(); ++i) ledger.multiply(i, +1);
  const Partition conj = lambda.conjugate();
  for (int r = 0; r < lambda.rows(); ++r) {
    for (int c = 0; c < lambda.row_length(r); ++c) ledger.multiply(hook(lambda, conj, r, c), -1);
  }
  return ledger.value("dim_irrep");
}

std::uint64_t multiplicity(const Partition& lambda, int d) {
  if (d < 1) throw std::invalid_argument("multiplicity: d must be positive");
  if (lambda.rows() > d) return 0;
  PrimeLedger ledger;
  const Partition conj = lambda.conjugate();
  for (int r = 0; r < lambda.rows(); ++r) {
    for (int c = 0; c < lambda.row_length(r); ++c) {
      ledger.multiply(d + c - r, +1);
      ledger.multiply(hook(lambda, conj, r, c), -1);
    }
  }
  return ledger.value("multiplicity");
}

std::int64_t content_sum(const Partition& lambda) {
  std::int64_t s = 0;
  for (int r = 0; r < lambda.rows(); ++r) {
    for (int c = 0; c < lambda.row_length(r); ++c) s += c - r;
  }
  return s;
}

std::map<Partition, std::uint64_t> branch_restrict(const Partition& lambda, int m) {
  if (m < 1) throw std::invalid_argument("branch_restrict: m must be >= 1");
  if (m > lambda.size()) throw std::invalid_argument("branch_restrict: m exceeds box count of " + lambda.str());
  std::map<Partition, std::uint64_t> level{{lambda, 1}};
  for (int step = lambda.size(); step > m; --step) {
    std::map<Partition, std::uint64_t> next;
    for (const auto& [shape, count] : level) {
      for (int r : shape.removable_rows()) next[shape.remove_box(r)] += count;
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace symdesign
