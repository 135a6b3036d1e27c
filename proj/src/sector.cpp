#include "symdesign/sector.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <regex>
#include <set>
#include <stdexcept>

namespace symdesign {

std::vector<Partition> SectorTuple::factors() const {
  std::vector<Partition> f = ket;
  f.insert(f.end(), bra.begin(), bra.end());
  return f;
}

void SectorTuple::validate() const {
  if (ket.empty() || ket.size() != bra.size()) throw std::invalid_argument("sector tuple needs k ket and k bra shapes");
  const int n0 = ket.front().size();
  for (const auto& p : factors()) {
    if (p.size() != n0) throw std::invalid_argument("sector tuple shapes must share one box count: " + str());
  }
}

std::uint64_t SectorTuple::block_dim() const {
  std::uint64_t d = 1;
  for (const auto& p : factors()) {
    if (__builtin_mul_overflow(d, dim_irrep(p), &d)) throw std::overflow_error("block dimension overflow");
  }
  return d;
}

std::uint64_t SectorTuple::multiplicity_weight(int d) const {
  std::uint64_t w = 1;
  for (const auto& p : factors()) {
    if (__builtin_mul_overflow(w, multiplicity(p, d), &w)) throw std::overflow_error("multiplicity weight overflow");
  }
  return w;
}

SectorTuple SectorTuple::canonical() const {
  std::vector<int> perm(k());
  std::iota(perm.begin(), perm.end(), 0);
  SectorTuple best = *this;
  do {
    SectorTuple t;
    for (int i : perm) {
      t.ket.push_back(ket[i]);
      t.bra.push_back(bra[i]);
    }
    best = std::min(best, t);
    std::swap(t.ket, t.bra);
    best = std::min(best, t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string SectorTuple::str() const {
  auto join = [](const std::vector<Partition>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += v[i].str();
    }
    return s;
  };
  return join(ket) + ";" + join(bra);
}

SectorTuple SectorTuple::parse(std::string_view text) {
  const std::string s(text);
  const auto semi = s.find(';');
  if (semi == std::string::npos || s.find(';', semi + 1) != std::string::npos) {
    throw std::invalid_argument("sector tuple needs exactly one ';' between ket and bra: '" + s + "'");
  }
  static const std::regex group(R"(\(\s*([0-9][0-9,\s]*)\))");
  auto shapes = [&](const std::string& part) {
    std::vector<Partition> out;
    for (auto it = std::sregex_iterator(part.begin(), part.end(), group); it != std::sregex_iterator(); ++it) {
      out.push_back(Partition::parse((*it)[1].str()));
    }
    return out;
  };
  SectorTuple t{shapes(s.substr(0, semi)), shapes(s.substr(semi + 1))};
  t.validate();
  return t;
}

std::vector<SectorTuple> tuples_from_shapes(const std::vector<Partition>& shapes, int k, bool dedupe) {
  if (shapes.empty() || k < 1) throw std::invalid_argument("tuples_from_shapes: need shapes and k >= 1");
  std::vector<SectorTuple> out;
  std::set<SectorTuple> seen;
  std::vector<int> idx(2 * k, 0);
  const int s = static_cast<int>(shapes.size());
  while (true) {
    SectorTuple t;
    for (int f = 0; f < 2 * k; ++f) (f < k ? t.ket : t.bra).push_back(shapes[idx[f]]);
    if (!dedupe) {
      out.push_back(t);
    } else {
      SectorTuple c = t.canonical();
      if (seen.insert(c).second) out.push_back(c);
    }
    int f = 2 * k - 1;
    while (f >= 0 && ++idx[f] == s) idx[f--] = 0;
    if (f < 0) break;
  }
  return out;
}

std::vector<SectorTuple> enumerate_tuples(int n, int d, int k, bool dedupe) {
  return tuples_from_shapes(partitions(n, d), k, dedupe);
}

std::vector<SectorTuple> read_tuples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tuple file " + path);
  std::vector<SectorTuple> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(SectorTuple::parse(line));
  }
  return out;
}

}  // namespace symdesign
