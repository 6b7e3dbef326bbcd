#pragma once

// Finite Abelian groups as products of cyclic factors. Elements are residue
// vectors; a dense index encoding (mixed radix, factor 0 least significant)
// feeds the flow engines.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "groupconn/util.hpp"

namespace groupconn {

struct GroupElement {
    std::vector<int> residues;

    bool operator==(const GroupElement& o) const = default;
    bool is_zero() const {
        return std::all_of(residues.begin(), residues.end(),
                           [](int r) { return r == 0; });
    }
};

class AbelianGroup {
public:
    AbelianGroup() = default;
    explicit AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw UsageError("group needs at least one factor");
        order_ = 1;
        for (int k : factors_) {
            if (k < 2) throw UsageError("cyclic factor must be >= 2");
            if (order_ > 1000000000 / k) throw UsageError("group order too large");
            order_ *= k;
        }
    }

    const std::vector<int>& factors() const { return factors_; }
    int order() const { return order_; }
    std::size_t rank() const { return factors_.size(); }

    bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

    GroupElement zero() const { return {std::vector<int>(factors_.size(), 0)}; }

    bool valid(const GroupElement& a) const {
        if (a.residues.size() != factors_.size()) return false;
        for (std::size_t j = 0; j < factors_.size(); ++j)
            if (a.residues[j] < 0 || a.residues[j] >= factors_[j]) return false;
        return true;
    }

    void require_valid(const GroupElement& a) const {
        if (!valid(a)) throw UsageError("element arity/range mismatch for " + to_string());
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        require_valid(a);
        require_valid(b);
        GroupElement out = a;
        for (std::size_t j = 0; j < factors_.size(); ++j)
            out.residues[j] = (a.residues[j] + b.residues[j]) % factors_[j];
        return out;
    }

    GroupElement negate(const GroupElement& a) const {
        require_valid(a);
        GroupElement out = a;
        for (std::size_t j = 0; j < factors_.size(); ++j)
            out.residues[j] = (factors_[j] - a.residues[j]) % factors_[j];
        return out;
    }

    GroupElement sub(const GroupElement& a, const GroupElement& b) const {
        return add(a, negate(b));
    }

    // Dense index: mixed radix over residues, factor 0 least significant.
    int element_index(const GroupElement& a) const {
        require_valid(a);
        int idx = 0, mul = 1;
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            idx += a.residues[j] * mul;
            mul *= factors_[j];
        }
        return idx;
    }

    GroupElement index_element(int idx) const {
        if (idx < 0 || idx >= order_) throw UsageError("element index out of range");
        GroupElement out = zero();
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            out.residues[j] = idx % factors_[j];
            idx /= factors_[j];
        }
        return out;
    }

    // Index-space arithmetic (used by the dense set engines).
    int add_index(int a, int b) const {
        int out = 0, mul = 1;
        for (int k : factors_) {
            out += ((a % k) + (b % k)) % k * mul;
            a /= k;
            b /= k;
            mul *= k;
        }
        return out;
    }

    int negate_index(int a) const {
        int out = 0, mul = 1;
        for (int k : factors_) {
            out += (k - a % k) % k * mul;
            a /= k;
            mul *= k;
        }
        return out;
    }

    int sub_index(int a, int b) const { return add_index(a, negate_index(b)); }

    // All elements in lexicographic residue order (leftmost residue most
    // significant for the comparison), optionally skipping zero.
    std::vector<GroupElement> enumerate_elements(bool nonzero_only) const {
        std::vector<GroupElement> out;
        out.reserve(order_);
        GroupElement cur = zero();
        // odometer with the LAST factor spinning fastest = lex order
        while (true) {
            if (!(nonzero_only && cur.is_zero())) out.push_back(cur);
            std::size_t j = factors_.size();
            while (j > 0) {
                --j;
                if (++cur.residues[j] < factors_[j]) break;
                cur.residues[j] = 0;
                if (j == 0) return out;
            }
        }
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            if (j) s += 'x';
            s += 'Z';
            s += std::to_string(factors_[j]);
        }
        return s;
    }

    std::string element_to_string(const GroupElement& a) const {
        require_valid(a);
        std::string s;
        for (std::size_t j = 0; j < a.residues.size(); ++j) {
            if (j) s += ',';
            s += std::to_string(a.residues[j]);
        }
        return s;
    }

    GroupElement parse_element(const std::string& text) const {
        GroupElement out;
        std::string tok;
        std::istringstream in(text);
        while (std::getline(in, tok, ',')) {
            std::size_t pos = 0;
            int v;
            try {
                v = std::stoi(tok, &pos);
            } catch (const std::exception&) {
                throw UsageError("bad element residue '" + tok + "'");
            }
            if (pos != tok.size()) throw UsageError("bad element residue '" + tok + "'");
            out.residues.push_back(v);
        }
        if (!valid(out))
            throw UsageError("element '" + text + "' not valid for " + to_string());
        return out;
    }

    // Invariant-factor comparison, for reporting only; structural equality
    // (same factor list) is the group identity everywhere else.
    bool is_isomorphic(const AbelianGroup& o) const {
        return invariant_factors() == o.invariant_factors();
    }

    std::vector<int> invariant_factors() const {
        // prime-power multiset -> invariant factor chain d1 | d2 | ...
        std::map<int, std::vector<int>> powers;  // prime -> exponents, descending
        for (int k : factors_) {
            int rem = k;
            for (int p = 2; p * p <= rem; ++p) {
                int e = 0;
                while (rem % p == 0) rem /= p, ++e;
                if (e) powers[p].push_back(e);
            }
            if (rem > 1) powers[rem].push_back(1);
        }
        std::size_t depth = 0;
        for (auto& [p, es] : powers) {
            std::sort(es.rbegin(), es.rend());
            depth = std::max(depth, es.size());
        }
        std::vector<int> inv(depth, 1);
        for (auto& [p, es] : powers)
            for (std::size_t i = 0; i < es.size(); ++i) {
                int pe = 1;
                for (int t = 0; t < es[i]; ++t) pe *= p;
                inv[i] *= pe;
            }
        std::sort(inv.begin(), inv.end());
        return inv;
    }

private:
    std::vector<int> factors_;
    int order_ = 0;
};

// Grammar: Z<int> joined by 'x', case-insensitive ("Z4", "Z2xZ2", "z2Xz3").
// Factors are kept in the given order; no isomorphism normalization.
inline AbelianGroup parse_group_spec(const std::string& text) {
    std::vector<int> factors;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != 'Z' && text[i] != 'z')
            throw UsageError("bad group spec '" + text + "': expected Z<k>");
        ++i;
        std::size_t start = i;
        while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw UsageError("bad group spec '" + text + "': missing order");
        int k;
        try {
            k = std::stoi(text.substr(start, i - start));
        } catch (const std::exception&) {
            throw UsageError("bad group spec '" + text + "': order out of range");
        }
        if (k < 2) throw UsageError("bad group spec '" + text + "': factor < 2");
        factors.push_back(k);
        if (i < text.size()) {
            if (text[i] != 'x' && text[i] != 'X')
                throw UsageError("bad group spec '" + text + "': expected 'x'");
            ++i;
            if (i == text.size())
                throw UsageError("bad group spec '" + text + "': trailing 'x'");
        }
    }
    if (factors.empty()) throw UsageError("empty group spec");
    return AbelianGroup(std::move(factors));
}

}  // namespace groupconn
