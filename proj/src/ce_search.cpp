#include <algorithm>
#include <random>
#include <set>

#include "ceforge/ce_system.hpp"

namespace ceforge {

namespace {

struct Decomposition {
  ElementMask x, y;
  TriangleMaps tc, ta;
};

struct Node {
  ElementMask xi = 0;
  std::vector<Decomposition> decompositions;
};

class Search {
 public:
  Search(const CESystem& c, const CESystem& a, std::uint64_t budget, std::uint64_t seed)
      : sysC_(c), sysA_(a), budget_(budget), rng_(seed), shuffle_(seed != 0) {}

  CompareResult run() {
    build_nodes();
    CompareResult out;
    const bool found = assign(0);
    out.candidates_tried = tried_;
    if (found) {
      CEIso iso;
      iso.components = chosen_;
      out.outcome = CompareOutcome::Isomorphic;
      out.iso = std::move(iso);
      out.reason = "isomorphism found after " + std::to_string(tried_) + " candidates";
    } else if (truncated_) {
      out.outcome = CompareOutcome::BudgetExceeded;
      out.reason = "search budget of " + std::to_string(budget_) + " candidates exhausted";
    } else if (incomplete_) {
      out.outcome = CompareOutcome::BudgetExceeded;
      out.reason = "no isomorphism among integer candidates with coefficients up to 4; search over Z is not exhaustive";
    } else {
      out.outcome = CompareOutcome::NotIsomorphic;
      out.reason = "exhaustive search: no family of isomorphisms satisfies every ladder";
    }
    return out;
  }

 private:
  void build_nodes() {
    const Poset& P = sysC_.poset();
    auto all = convex_sets(P);
    std::set<ElementMask> placed{0};
    ElementMask prefix = 0;
    for (std::size_t q : P.linear_extension()) {
      prefix |= ElementMask{1} << q;
      for (ElementMask xi : all) {
        if (!is_subset(xi, prefix) || placed.count(xi)) continue;
        placed.insert(xi);
        nodes_.push_back(make_node(xi));
      }
    }
  }

  Node make_node(ElementMask xi) const {
    const Poset& P = sysC_.poset();
    Node n;
    n.xi = xi;
    const ElementMask beta = P.down_closure(xi);
    const ElementMask alpha = beta & ~xi;
    // Proper nonempty sub-down-sets of ξ (relative to ξ) give the triangles.
    auto elems = mask_elements(xi);
    const std::size_t m = elems.size();
    if (m > 16) return n;
    for (std::uint64_t sub = 1; sub + 1 < (std::uint64_t{1} << m); ++sub) {
      ElementMask x = 0;
      for (std::size_t b = 0; b < m; ++b)
        if ((sub >> b) & 1U) x |= ElementMask{1} << elems[b];
      if ((P.down_closure(x) & xi) != x) continue;
      const DownSet a{alpha}, b{alpha | x}, c{alpha | xi};
      n.decompositions.push_back(Decomposition{x, xi & ~x, sysC_.triangle_maps(a, b, c), sysA_.triangle_maps(a, b, c)});
    }
    return n;
  }

  GroupHom component(ElementMask xi) const {
    auto it = chosen_.find(xi);
    if (it != chosen_.end()) return it->second;
    return GroupHom::zero(sysC_.group(xi), sysA_.group(xi));
  }

  bool budget_left() const { return tried_ < budget_; }

  bool assign(std::size_t pos) {
    if (pos == nodes_.size()) {
      CEIso iso;
      iso.components = chosen_;
      return verify_ce_iso(sysC_, sysA_, iso).ok;
    }
    const Node& node = nodes_[pos];
    for (const auto& d : node.decompositions) {
      GroupHom hx = component(d.x), hy = component(d.y);
      if (compose(hx, d.tc.k) != compose(d.ta.k, hy)) return false;
    }
    const FgGroup& gc = sysC_.group(node.xi);
    const FgGroup& ga = sysA_.group(node.xi);
    if (gc.is_trivial()) return assign(pos + 1);

    auto candidates = generate(node, gc, ga);
    for (auto& h : candidates) {
      if (!budget_left()) {
        truncated_ = true;
        return false;
      }
      ++tried_;
      if (!is_isomorphism(h).isomorphism) continue;
      chosen_.insert_or_assign(node.xi, h);
      if (assign(pos + 1)) return true;
      chosen_.erase(node.xi);
      if (truncated_) return false;
    }
    return false;
  }

  // All solutions H of the linear constraints (i- and j-squares, relations),
  // enumerated exhaustively for finite groups and by growing boxes otherwise.
  std::vector<GroupHom> generate(const Node& node, const FgGroup& gc, const FgGroup& ga) {
    const Coefficients& ring = ga.ring;
    const std::size_t g = ga.generators();
    const std::size_t nvars = g * gc.generators();
    auto var = [&](std::size_t r, std::size_t c) { return c * g + r; };

    std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows;
    std::vector<Scalar> rhs;
    std::size_t slack = 0;
    auto add_row = [&](std::vector<std::pair<std::size_t, Scalar>> coeffs, const Scalar& modulus, const Scalar& b) {
      if (modulus != 0) coeffs.emplace_back(nvars + slack++, modulus);
      rows.push_back(std::move(coeffs));
      rhs.push_back(b);
    };

    for (const auto& d : node.decompositions) {
      const GroupHom hx = component(d.x), hy = component(d.y);
      // H i_C ≡ i_A h_X
      Matrix target_i = d.ta.i.matrix() * hx.matrix();
      for (std::size_t cp = 0; cp < d.tc.i.source().generators(); ++cp)
        for (std::size_t r = 0; r < g; ++r) {
          std::vector<std::pair<std::size_t, Scalar>> co;
          for (std::size_t c = 0; c < gc.generators(); ++c)
            if (d.tc.i.matrix()(c, cp) != 0) co.emplace_back(var(r, c), d.tc.i.matrix()(c, cp));
          add_row(std::move(co), Scalar(ga.order(r)), target_i(r, cp));
        }
      // j_A H ≡ h_Y j_C
      Matrix target_j = hy.matrix() * d.tc.j.matrix();
      const FgGroup& gy = d.ta.j.target();
      for (std::size_t c = 0; c < gc.generators(); ++c)
        for (std::size_t ry = 0; ry < gy.generators(); ++ry) {
          std::vector<std::pair<std::size_t, Scalar>> co;
          for (std::size_t r = 0; r < g; ++r)
            if (d.ta.j.matrix()(ry, r) != 0) co.emplace_back(var(r, c), d.ta.j.matrix()(ry, r));
          add_row(std::move(co), Scalar(gy.order(ry)), target_j(ry, c));
        }
    }
    // Relations of the source map into relations of the target.
    for (std::size_t c0 = 0; c0 < gc.torsion.size(); ++c0)
      for (std::size_t r = 0; r < g; ++r)
        add_row({{var(r, c0), Scalar(gc.torsion[c0])}}, Scalar(ga.order(r)), Scalar(0));

    Matrix particular(ring, nvars, 1);
    std::vector<Matrix> lattice;
    if (rows.empty()) {
      for (std::size_t v = 0; v < nvars; ++v) {
        Matrix e(ring, nvars, 1);
        e.set(v, 0, 1);
        lattice.push_back(e);
      }
    } else {
      Matrix m(ring, rows.size(), nvars + slack);
      Matrix b(ring, rows.size(), 1);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& [col, val] : rows[i]) m.add_to(i, col, val);
        b.set(i, 0, rhs[i]);
      }
      auto x0 = solve(m, b);
      if (!x0) return {};
      std::vector<std::size_t> head(nvars);
      for (std::size_t v = 0; v < nvars; ++v) head[v] = v;
      particular = x0->select_rows(head);
      Matrix kb = kernel_basis(m);
      for (std::size_t j = 0; j < kb.cols(); ++j) {
        Matrix col = kb.select_columns({j}).select_rows(head);
        if (!col.is_zero()) lattice.push_back(col);
      }
    }

    auto to_hom = [&](const Matrix& vec) {
      Matrix h(ring, g, gc.generators());
      for (std::size_t c = 0; c < gc.generators(); ++c)
        for (std::size_t r = 0; r < g; ++r) h.set(r, c, vec(var(r, c), 0));
      return GroupHom(gc, ga, h);
    };

    std::vector<GroupHom> out;
    const std::uint64_t cap = budget_ - tried_ + 1;
    if (ga.is_finite()) {
      // Breadth-first closure of the solution subgroup modulo the relations.
      auto modulus = [&](std::size_t v) -> mpz_class {
        if (ring.is_finite()) return mpz_class(ring.modulus());
        return ga.order(v % g);
      };
      auto reduce = [&](std::vector<mpz_class> x) {
        for (std::size_t v = 0; v < nvars; ++v) {
          mpz_class mdl = modulus(v);
          mpz_fdiv_r(x[v].get_mpz_t(), x[v].get_mpz_t(), mdl.get_mpz_t());
        }
        return x;
      };
      std::vector<std::vector<mpz_class>> gens;
      for (const auto& l : lattice) {
        std::vector<mpz_class> v(nvars);
        for (std::size_t i = 0; i < nvars; ++i) v[i] = l(i, 0).get_num();
        gens.push_back(reduce(v));
      }
      std::set<std::vector<mpz_class>> seen;
      std::vector<std::vector<mpz_class>> queue{std::vector<mpz_class>(nvars, 0)};
      seen.insert(queue.front());
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const auto& gv : gens) {
          std::vector<mpz_class> next = queue[head];
          for (std::size_t i = 0; i < nvars; ++i) next[i] += gv[i];
          next = reduce(next);
          if (seen.insert(next).second) {
            queue.push_back(next);
            if (queue.size() > cap) {
              truncated_ = true;
              break;
            }
          }
        }
        if (queue.size() > cap) break;
      }
      for (const auto& q : queue) {
        Matrix v = particular;
        for (std::size_t i = 0; i < nvars; ++i) v.add_to(i, 0, Scalar(q[i]));
        out.push_back(to_hom(v));
      }
    } else {
      // Infinite solution set: integer combinations in growing boxes. Never
      // exhaustive, so a failed search reports budget exhaustion.
      incomplete_ = true;
      const std::size_t m = lattice.size();
      std::vector<long> coeff(m, 0);
      out.push_back(to_hom(particular));
      for (long bound = 1; out.size() < cap && m > 0 && bound <= 4; ++bound) {
        std::fill(coeff.begin(), coeff.end(), -bound);
        while (out.size() < cap) {
          bool on_shell = false;
          for (long c : coeff) on_shell |= (c == bound || c == -bound);
          if (on_shell) {
            Matrix v = particular;
            for (std::size_t i = 0; i < m; ++i)
              if (coeff[i] != 0) v = v + lattice[i].scaled(Scalar(coeff[i]));
            out.push_back(to_hom(v));
          }
          std::size_t k = 0;
          while (k < m && coeff[k] == bound) coeff[k++] = -bound;
          if (k == m) break;
          ++coeff[k];
        }
      }
    }
    if (shuffle_) std::shuffle(out.begin(), out.end(), rng_);
    return out;
  }

  const CESystem& sysC_;
  const CESystem& sysA_;
  std::uint64_t budget_;
  std::uint64_t tried_ = 0;
  bool truncated_ = false;   // budget ran out; stop searching
  bool incomplete_ = false;  // some candidate list was not exhaustive
  std::mt19937_64 rng_;
  bool shuffle_;
  std::vector<Node> nodes_;
  std::map<ElementMask, GroupHom> chosen_;
};

}  // namespace

CompareResult ce_isomorphic_bruteforce(const CESystem& sysC, const CESystem& sysA, std::uint64_t budget,
                                       std::uint64_t seed) {
  if (sysC.poset() != sysA.poset()) throw Error(ErrorCode::DimensionMismatch, "instances use different posets");
  if (sysC.base().ring() != sysA.base().ring()) {
    throw Error(ErrorCode::DimensionMismatch, "instances use different coefficients");
  }
  if (auto pair = distinguishing_pair(sysC, sysA)) {
    CompareResult out;
    out.outcome = CompareOutcome::NotIsomorphic;
    out.distinguishing = pair;
    const Poset& P = sysC.poset();
    out.reason = "E-terms differ on (" + P.format(pair->first.bits) + "," + P.format(pair->second.bits) +
                 "): " + sysC.e_term(pair->first, pair->second).to_string() + " vs " +
                 sysA.e_term(pair->first, pair->second).to_string();
    return out;
  }
  return Search(sysC, sysA, budget, seed).run();
}

}  // namespace ceforge
