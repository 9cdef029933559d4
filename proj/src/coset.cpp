#include "tbraid/coset.hpp"

#include <algorithm>
#include <sstream>

namespace tbraid {

int CosetTable::act(int c, const FreeWord& w) const {
  for (int l : w.letters) {
    if (c < 0) return -1;
    c = rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(column(l))];
  }
  return c;
}

namespace {

class Enumerator {
 public:
  Enumerator(const GroupPresentation& p, std::size_t cap)
      : cols_(2 * p.generators.size()), cap_(cap) {
    for (const auto& r : p.relators) {
      FreeWord c = cyclic_reduce(r);
      if (c.empty()) continue;
      std::vector<int> w;
      for (int l : c.letters) w.push_back(CosetTable::column(l));
      relators_.push_back(std::move(w));
    }
    new_coset();
  }

  CosetTable run() {
    CosetTable out;
    out.generator_count = cols_ / 2;
    for (std::size_t a = 0; a < parent_.size() && !exhausted_; ++a) {
      for (const auto& w : relators_) {
        if (!alive(a) || exhausted_) break;
        scan_and_fill(static_cast<int>(a), w);
      }
      for (std::size_t x = 0; x < cols_ && alive(a) && !exhausted_; ++x)
        if (at(static_cast<int>(a), x) < 0) define(static_cast<int>(a), x);
    }
    out.defined = parent_.size();
    if (exhausted_) return out;
    // compact the live cosets in order
    std::vector<int> index(parent_.size(), -1);
    int next = 0;
    for (std::size_t a = 0; a < parent_.size(); ++a)
      if (alive(a)) index[a] = next++;
    out.rows.assign(static_cast<std::size_t>(next), std::vector<int>(cols_, -1));
    for (std::size_t a = 0; a < parent_.size(); ++a) {
      if (!alive(a)) continue;
      for (std::size_t x = 0; x < cols_; ++x)
        out.rows[static_cast<std::size_t>(index[a])][x] = index[static_cast<std::size_t>(at(static_cast<int>(a), x))];
    }
    out.complete = true;
    out.order = static_cast<std::size_t>(next);
    return out;
  }

 private:
  std::size_t cols_;
  std::size_t cap_;
  std::vector<int> table_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> relators_;
  bool exhausted_ = false;

  static std::size_t inv(std::size_t x) { return x ^ 1u; }
  int& at(int c, std::size_t x) { return table_[static_cast<std::size_t>(c) * cols_ + x]; }
  bool alive(std::size_t a) const { return parent_[a] == static_cast<int>(a); }

  int new_coset() {
    const int c = static_cast<int>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + cols_, -1);
    return c;
  }

  void define(int a, std::size_t x) {
    if (parent_.size() >= cap_) {
      exhausted_ = true;
      return;
    }
    const int b = new_coset();
    at(a, x) = b;
    at(b, inv(x)) = a;
  }

  int rep(int k) {
    int r = k;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(k)] != r) {
      int next = parent_[static_cast<std::size_t>(k)];
      parent_[static_cast<std::size_t>(k)] = r;
      k = next;
    }
    return r;
  }

  void merge(int k, int l, std::vector<int>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[static_cast<std::size_t>(l)] = k;
    queue.push_back(l);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int g = queue[i];
      for (std::size_t x = 0; x < cols_; ++x) {
        const int d = at(g, x);
        if (d < 0) continue;
        at(d, inv(x)) = -1;
        const int mu = rep(g), nu = rep(d);
        if (at(mu, x) >= 0) {
          merge(nu, at(mu, x), queue);
        } else if (at(nu, inv(x)) >= 0) {
          merge(mu, at(nu, inv(x)), queue);
        } else {
          at(mu, x) = nu;
          at(nu, inv(x)) = mu;
        }
      }
    }
  }

  void scan_and_fill(int a, const std::vector<int>& w) {
    const int n = static_cast<int>(w.size());
    int f = a, b = a;
    int i = 0, j = n - 1;
    for (;;) {
      while (i <= j && at(f, static_cast<std::size_t>(w[static_cast<std::size_t>(i)])) >= 0) {
        f = at(f, static_cast<std::size_t>(w[static_cast<std::size_t>(i)]));
        ++i;
      }
      if (i > j) {
        if (f != a) coincidence(f, a);
        return;
      }
      while (j >= i && at(b, inv(static_cast<std::size_t>(w[static_cast<std::size_t>(j)]))) >= 0) {
        b = at(b, inv(static_cast<std::size_t>(w[static_cast<std::size_t>(j)])));
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        const auto x = static_cast<std::size_t>(w[static_cast<std::size_t>(i)]);
        at(f, x) = b;
        at(b, inv(x)) = f;
        return;
      }
      define(f, static_cast<std::size_t>(w[static_cast<std::size_t>(i)]));
      if (exhausted_) return;
    }
  }
};

}  // namespace

CosetTable todd_coxeter(const GroupPresentation& p, std::size_t max_cosets) {
  p.check();
  if (max_cosets < 1) throw std::invalid_argument("coset cap must be positive");
  if (p.generators.empty()) {
    CosetTable t;
    t.rows.emplace_back();
    t.complete = true;
    t.order = 1;
    t.defined = 1;
    return t;
  }
  return Enumerator(p, max_cosets).run();
}

std::string dump(const CosetTable& t) {
  std::ostringstream out;
  if (!t.complete) {
    out << "exhausted after " << t.defined << " cosets\n";
    return out.str();
  }
  out << "order " << t.order << "\n";
  for (std::size_t c = 0; c < t.rows.size(); ++c) {
    out << c << ":";
    for (int v : t.rows[c]) out << " " << v;
    out << "\n";
  }
  return out.str();
}

bool is_consistent(const CosetTable& t, const GroupPresentation& p) {
  if (!t.complete) return false;
  const std::size_t n = t.rows.size();
  for (std::size_t x = 0; x < 2 * t.generator_count; ++x) {
    std::vector<char> hit(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      const int d = t.rows[c][x];
      if (d < 0 || static_cast<std::size_t>(d) >= n || hit[static_cast<std::size_t>(d)]) return false;
      hit[static_cast<std::size_t>(d)] = 1;
      if (t.rows[static_cast<std::size_t>(d)][x ^ 1u] != static_cast<int>(c)) return false;
    }
  }
  for (const auto& r : p.relators)
    for (std::size_t c = 0; c < n; ++c)
      if (t.act(static_cast<int>(c), r) != static_cast<int>(c)) return false;
  return true;
}

}  // namespace tbraid
