#pragma once

#include "ktorus/matrix.hpp"
#include "ktorus/smith.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ktorus {

/// Finitely generated abelian group Z^free_rank + Z/t_1 + ... + Z/t_k in
/// invariant-factor form: every t_i >= 2 and t_1 | t_2 | ... .
/// Construct through the factory functions; two groups are isomorphic iff equal.
class AbelianGroup {
  public:
    AbelianGroup() = default;

    static AbelianGroup free_group(std::size_t rank) { return AbelianGroup(rank, {}); }
    static AbelianGroup cyclic(const Integer& order) { return from_cyclic_orders(0, {order}); }

    /// Z^free_rank + sum_i Z/orders[i]. An order of 0 contributes Z, an order of +-1 nothing.
    static AbelianGroup from_cyclic_orders(std::size_t free_rank, const std::vector<Integer>& orders) {
        std::vector<Integer> nontrivial;
        for (const auto& o : orders) {
            if (o == 0)
                ++free_rank;
            else if (abs(o) != 1)
                nontrivial.push_back(abs(o));
        }
        if (nontrivial.empty())
            return AbelianGroup(free_rank, {});
        IntegerMatrix diag(nontrivial.size(), nontrivial.size());
        for (std::size_t i = 0; i < nontrivial.size(); ++i)
            diag(i, i) = nontrivial[i];
        std::vector<Integer> torsion;
        for (const auto& f : smith_normal_form(diag).factors)
            if (f > 1)
                torsion.push_back(f);
        return AbelianGroup(free_rank, std::move(torsion));
    }

    std::size_t free_rank() const noexcept { return free_rank_; }
    const std::vector<Integer>& torsion() const noexcept { return torsion_; }
    bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }

    friend AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
        std::vector<Integer> orders = a.torsion_;
        orders.insert(orders.end(), b.torsion_.begin(), b.torsion_.end());
        return from_cyclic_orders(a.free_rank_ + b.free_rank_, orders);
    }

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

  private:
    AbelianGroup(std::size_t rank, std::vector<Integer> torsion) : free_rank_(rank), torsion_(std::move(torsion)) {}

    std::size_t free_rank_ = 0;
    std::vector<Integer> torsion_;
};

/// "Z^r ⊕ Z/t1 ⊕ Z/t2"; "0" for the trivial group.
inline std::string to_string(const AbelianGroup& g) {
    if (g.is_trivial())
        return "0";
    std::string s;
    if (g.free_rank() == 1)
        s = "Z";
    else if (g.free_rank() > 1)
        s = "Z^" + std::to_string(g.free_rank());
    for (const auto& t : g.torsion()) {
        if (!s.empty())
            s += " ⊕ ";
        s += "Z/" + t.get_str();
    }
    return s;
}

/// Z^rows / image(m), read off the Smith factors.
inline AbelianGroup cokernel(const IntegerMatrix& m) {
    const auto snf = smith_normal_form(m);
    std::size_t nonzero = 0;
    std::vector<Integer> torsion;
    for (const auto& f : snf.factors) {
        if (f != 0)
            ++nonzero;
        if (f > 1)
            torsion.push_back(f);
    }
    return AbelianGroup::from_cyclic_orders(m.rows() - nonzero, torsion);
}

} // namespace ktorus
