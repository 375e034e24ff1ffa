#include "mchom/partitions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mchom/check.hpp"

namespace mchom {

IntegerPartition::IntegerPartition(std::vector<int> p) : parts(std::move(p)) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 1) throw std::invalid_argument("partition parts must be >= 1");
    if (i > 0 && parts[i] > parts[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

int IntegerPartition::sum() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

std::strong_ordering IntegerPartition::operator<=>(const IntegerPartition& o) const {
  return std::lexicographical_compare_three_way(parts.begin(), parts.end(),
                                                o.parts.begin(), o.parts.end());
}

std::string IntegerPartition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(parts[i]);
  }
  return s;
}

IntegerPartition IntegerPartition::parse(const std::string& s) {
  std::vector<int> parts;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, '+')) {
    if (tok.empty()) continue;
    parts.push_back(std::stoi(tok));
  }
  return IntegerPartition(std::move(parts));
}

SetPartition::SetPartition(std::vector<std::vector<int>> bs) : blocks(std::move(bs)) {
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("set partition blocks must be nonempty");
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end())
      throw std::invalid_argument("repeated element within a block");
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  std::vector<int> g = ground();
  if (std::adjacent_find(g.begin(), g.end()) != g.end())
    throw std::invalid_argument("blocks are not disjoint");
}

std::vector<int> SetPartition::ground() const {
  std::vector<int> g;
  for (const auto& b : blocks) g.insert(g.end(), b.begin(), b.end());
  std::sort(g.begin(), g.end());
  return g;
}

IntegerPartition SetPartition::shape() const {
  std::vector<int> sizes;
  sizes.reserve(blocks.size());
  for (const auto& b : blocks) sizes.push_back(static_cast<int>(b.size()));
  std::sort(sizes.rbegin(), sizes.rend());
  return IntegerPartition(std::move(sizes));
}

std::strong_ordering SetPartition::operator<=>(const SetPartition& o) const {
  return std::lexicographical_compare_three_way(
      blocks.begin(), blocks.end(), o.blocks.begin(), o.blocks.end(),
      [](const auto& a, const auto& b) {
        return std::lexicographical_compare_three_way(a.begin(), a.end(),
                                                      b.begin(), b.end());
      });
}

std::string SetPartition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) s += '|';
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      if (j) s += ',';
      s += std::to_string(blocks[i][j]);
    }
  }
  return s;
}

SetPartition SetPartition::parse(const std::string& s) {
  std::vector<std::vector<int>> blocks;
  std::string btok;
  std::istringstream in(s);
  while (std::getline(in, btok, '|')) {
    if (btok.empty()) continue;
    std::vector<int> block;
    std::string etok;
    std::istringstream bin(btok);
    while (std::getline(bin, etok, ',')) {
      if (etok.empty()) continue;
      block.push_back(std::stoi(etok));
    }
    if (!block.empty()) blocks.push_back(std::move(block));
  }
  return SetPartition(std::move(blocks));
}

namespace {

Int stirling2_by_recurrence(long n, long k) {
  static std::map<std::pair<long, long>, Int> memo;
  if (k < 0 || k > n) return 0;
  if (n == 0) return k == 0 ? 1 : 0;
  if (k == 0) return 0;
  auto key = std::make_pair(n, k);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Int v = Int(k) * stirling2_by_recurrence(n - 1, k) +
          stirling2_by_recurrence(n - 1, k - 1);
  memo.emplace(key, v);
  return v;
}

Int stirling2_by_formula(long n, long k) {
  // (1/k!) sum_{i=0}^{k} (-1)^i C(k,i) (k-i)^n
  Int acc = 0;
  for (long i = 0; i <= k; ++i) {
    Int term = binomial(k, i) * pow_int(Int(k - i), static_cast<unsigned long>(n));
    if (i % 2) acc -= term; else acc += term;
  }
  Int fk = factorial(k);
  check(acc % fk == 0, "stirling2 alternating sum not divisible by k!");
  return acc / fk;
}

}  // namespace

Int stirling2(long n, long k) {
  if (n < 0) throw std::invalid_argument("stirling2: n must be >= 0");
  if (k < 0 || k > n) return 0;
  Int v = stirling2_by_recurrence(n, k);
  // Both routes must agree; verified once per distinct (n, k).
  static std::set<std::pair<long, long>> verified;
  if (verified.insert({n, k}).second)
    check(v == stirling2_by_formula(n, k), "stirling2 route disagreement");
  return v;
}

Int assoc_stirling2(long n, long k, long r) {
  if (r < 1) throw std::invalid_argument("assoc_stirling2: r must be >= 1");
  if (n < 0) throw std::invalid_argument("assoc_stirling2: n must be >= 0");
  if (k < 0) return 0;
  static std::map<std::tuple<long, long, long>, Int> memo;
  if (n == 0) return k == 0 ? 1 : 0;
  if (k == 0) return 0;
  if (n < k * r) return 0;
  auto key = std::make_tuple(n, k, r);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  // Classify by the fate of element n: either it joins one of k blocks of a
  // smaller configuration, or it forms a fresh block together with r-1 of the
  // remaining n-1 elements.
  Int v = Int(k) * assoc_stirling2(n - 1, k, r);
  if (n >= r) v += binomial(n - 1, r - 1) * assoc_stirling2(n - r, k - 1, r);
  memo.emplace(key, v);
  return v;
}

Int beta(long n, long q) {
  if (n < 2 || q < 0) throw std::invalid_argument("beta: requires n >= 2, q >= 0");
  if (q == 0 || q > n / 2 - 1) return 0;
  Int acc = 0;
  for (long i = 0; i <= q + 1; ++i) {
    Int term = binomial(n, i) * stirling2(n - i, q + 1 - i);
    if (i % 2) acc -= term; else acc += term;
  }
  return acc;
}

namespace {

void partitions_rec(int remaining, int max_next, const PartitionConstraints& c,
                    std::vector<int>& cur, std::vector<IntegerPartition>& out) {
  if (remaining == 0) {
    if (!c.length || static_cast<int>(cur.size()) == *c.length)
      out.emplace_back(cur);
    return;
  }
  if (c.length && static_cast<int>(cur.size()) >= *c.length) return;
  int lo = c.min_part ? *c.min_part : 1;
  int hi = std::min(remaining, max_next);
  for (int p = hi; p >= lo; --p) {
    // Feasibility pruning on the remaining length budget.
    if (c.length) {
      int slots = *c.length - static_cast<int>(cur.size()) - 1;
      int rest = remaining - p;
      int pmax = c.distinct ? p - 1 : p;
      if (rest > 0 && slots == 0) continue;
      if (rest > static_cast<long>(slots) * pmax) continue;
      if (slots > 0 && rest < slots * lo) continue;
    }
    cur.push_back(p);
    partitions_rec(remaining - p, c.distinct ? p - 1 : p, c, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<IntegerPartition> partitions_with_constraints(
    int n, const PartitionConstraints& c) {
  if (n < 0) throw std::invalid_argument("partitions_with_constraints: n < 0");
  std::vector<IntegerPartition> out;
  if (n == 0) {
    if (!c.length || *c.length == 0) out.emplace_back();
    return out;
  }
  int cap = c.max_part ? std::min(*c.max_part, n) : n;
  std::vector<int> cur;
  partitions_rec(n, cap, c, cur, out);
  return out;
}

std::vector<IntegerPartition> partitions_of(int n) {
  return partitions_with_constraints(n, {});
}

IntegerPartition pad_partition(const IntegerPartition& lambda, int n) {
  int m = lambda.sum();
  int head = n - m;
  if (lambda.empty()) {
    if (head == 0) return lambda;
    if (head < 0) throw std::invalid_argument("pad_partition: n < |lambda|");
    return IntegerPartition({head});
  }
  if (head < lambda.parts.front())
    throw std::invalid_argument("pad_partition: requires n - |lambda| >= lambda_1");
  std::vector<int> parts;
  parts.reserve(lambda.parts.size() + 1);
  parts.push_back(head);
  parts.insert(parts.end(), lambda.parts.begin(), lambda.parts.end());
  return IntegerPartition(std::move(parts));
}

bool dominates(const IntegerPartition& mu, const IntegerPartition& lambda) {
  if (mu.sum() != lambda.sum())
    throw std::invalid_argument("dominates: partitions of different integers");
  int a = 0, b = 0;
  std::size_t len = std::max(mu.parts.size(), lambda.parts.size());
  for (std::size_t i = 0; i < len; ++i) {
    a += i < mu.parts.size() ? mu.parts[i] : 0;
    b += i < lambda.parts.size() ? lambda.parts[i] : 0;
    if (a < b) return false;
  }
  return true;
}

namespace {

void set_partitions_rec(const std::vector<int>& rest,
                        const SetPartitionConstraints& c,
                        std::vector<std::vector<int>>& blocks,
                        std::vector<SetPartition>& out) {
  if (rest.empty()) {
    if (c.num_blocks && static_cast<int>(blocks.size()) != *c.num_blocks) return;
    bool ok = true;
    for (const auto& b : blocks)
      if (c.min_block_size && static_cast<int>(b.size()) < *c.min_block_size) ok = false;
    if (ok) out.emplace_back(blocks);
    return;
  }
  if (c.num_blocks && static_cast<int>(blocks.size()) > *c.num_blocks) return;
  // The smallest remaining element starts the next block; choose its
  // companions from the rest.  This yields blocks ordered by least element.
  int head = rest.front();
  std::vector<int> pool(rest.begin() + 1, rest.end());
  int m = static_cast<int>(pool.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
    std::vector<int> block{head}, next_rest;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) block.push_back(pool[i]);
      else next_rest.push_back(pool[i]);
    }
    blocks.push_back(std::move(block));
    set_partitions_rec(next_rest, c, blocks, out);
    blocks.pop_back();
  }
}

}  // namespace

std::vector<SetPartition> set_partitions(const std::vector<int>& ground,
                                         const SetPartitionConstraints& c) {
  std::vector<int> g = ground;
  std::sort(g.begin(), g.end());
  if (std::adjacent_find(g.begin(), g.end()) != g.end())
    throw std::invalid_argument("set_partitions: ground set has repeats");
  if (g.size() > 20)
    throw std::invalid_argument("set_partitions: ground set too large");
  std::vector<SetPartition> out;
  if (g.empty()) {
    if (!c.num_blocks || *c.num_blocks == 0) out.emplace_back();
    return out;
  }
  std::vector<std::vector<int>> blocks;
  set_partitions_rec(g, c, blocks, out);
  if (c.forbid_full_block) {
    std::erase_if(out, [&](const SetPartition& p) {
      for (const auto& b : p.blocks)
        if (b == g) return true;
      return false;
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mchom
