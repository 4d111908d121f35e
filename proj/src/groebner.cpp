#include "tatedr/groebner.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <utility>

namespace tatedr {

SymbolPoly SymbolPoly::zero(int varCount) { return SymbolPoly(varCount); }

SymbolPoly SymbolPoly::term(const MultiIndex& key, const RatFun& c) {
    SymbolPoly p(static_cast<int>(key.size() / 2));
    if (!c.isZero()) p.terms_.emplace(key, c);
    return p;
}

RatFun SymbolPoly::coefficientOf(const MultiIndex& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? RatFun::constant(Rational(0)) : it->second;
}

void SymbolPoly::forEachTerm(const std::function<void(const MultiIndex&, const RatFun&)>& fn) const {
    for (const auto& [key, c] : terms_) fn(key, c);
}

std::optional<MultiIndex> SymbolPoly::leadingKey() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
}

RatFun SymbolPoly::leadingCoefficient() const {
    if (terms_.empty()) return RatFun::constant(Rational(0));
    return terms_.rbegin()->second;
}

SymbolPoly SymbolPoly::operator-() const {
    SymbolPoly out(varCount_);
    for (const auto& [key, c] : terms_) out.terms_.emplace(key, -c);
    return out;
}

SymbolPoly operator+(const SymbolPoly& a, const SymbolPoly& b) {
    SymbolPoly out = a;
    for (const auto& [key, c] : b.terms_) {
        auto it = out.terms_.find(key);
        if (it == out.terms_.end()) {
            out.terms_.emplace(key, c);
        } else {
            it->second = it->second + c;
            if (it->second.isZero()) out.terms_.erase(it);
        }
    }
    return out;
}

SymbolPoly operator-(const SymbolPoly& a, const SymbolPoly& b) { return a + (-b); }

SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b) {
    SymbolPoly out(a.varCount_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            MultiIndex key = ka;
            for (std::size_t i = 0; i < key.size(); ++i) key[i] += kb[i];
            RatFun c = ca * cb;
            auto it = out.terms_.find(key);
            if (it == out.terms_.end()) {
                out.terms_.emplace(std::move(key), c);
            } else {
                it->second = it->second + c;
                if (it->second.isZero()) out.terms_.erase(it);
            }
        }
    }
    return out;
}

SymbolPoly SymbolPoly::scaledBy(const RatFun& c) const {
    SymbolPoly out(varCount_);
    if (c.isZero()) return out;
    for (const auto& [key, v] : terms_) out.terms_.emplace(key, v * c);
    return out;
}

SymbolPoly SymbolPoly::monic() const {
    if (terms_.empty()) return *this;
    return scaledBy(leadingCoefficient().inverse());
}

std::string SymbolPoly::toString() const {
    if (terms_.empty()) return "0";
    std::size_t n = static_cast<std::size_t>(varCount_);
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const MultiIndex& key = it->first;
        std::string cs = it->second.toString();
        bool negated = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
            cs.find(" - ") == std::string::npos) {
            negated = true;
            cs = cs.substr(1);
        }
        std::ostringstream mon;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] == 0) continue;
            if (mon.tellp() > 0) mon << "*";
            if (i < n) {
                mon << "x" << i + 1;
            } else {
                mon << "xi" << i + 1 - n;
            }
            if (key[i] > 1) mon << "^" << key[i];
        }
        bool multiTerm = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        if (first) {
            if (negated) out << "-";
            first = false;
        } else {
            out << (negated ? " - " : " + ");
        }
        if (mon.tellp() == 0) {
            out << cs;
        } else if (cs == "1") {
            out << mon.str();
        } else if (multiTerm) {
            out << "(" << cs << ")*" << mon.str();
        } else {
            out << cs << "*" << mon.str();
        }
    }
    return out.str();
}

namespace {

MultiIndex keyLcm(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], b[i]);
    return out;
}

MultiIndex keyQuotient(const MultiIndex& key, const MultiIndex& divisor) {
    MultiIndex out = key;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= divisor[i];
    return out;
}

template <class Poly>
Poly makeMonic(const Poly& g) {
    return g.scaledBy(g.leadingCoefficient().inverse());
}

/// Full left normal form: the largest term divisible by some leading monomial
/// is cancelled by a left multiple; irreducible terms move to the output.
/// Each step strictly lowers the largest unresolved key, so this terminates.
template <class Poly>
Poly reduceImpl(const Poly& f, const std::vector<Poly>& basis) {
    Poly rest = f;
    Poly out = Poly::zero(f.varCount());
    while (!rest.isZero()) {
        const MultiIndex key = *rest.leadingKey();
        const RatFun c = rest.leadingCoefficient();
        const Poly* reducer = nullptr;
        for (const Poly& g : basis) {
            if (g.isZero()) continue;
            if (dividesComponentwise(*g.leadingKey(), key)) {
                reducer = &g;
                break;
            }
        }
        if (reducer != nullptr) {
            Poly mult = Poly::term(keyQuotient(key, *reducer->leadingKey()), c / reducer->leadingCoefficient());
            rest = rest - mult * *reducer;
        } else {
            Poly tm = Poly::term(key, c);
            out = out + tm;
            rest = rest - tm;
        }
    }
    return out;
}

template <class Poly>
Poly sPair(const Poly& g, const Poly& h) {
    const MultiIndex lcm = keyLcm(*g.leadingKey(), *h.leadingKey());
    Poly left = Poly::term(keyQuotient(lcm, *g.leadingKey()), g.leadingCoefficient().inverse()) * g;
    Poly right = Poly::term(keyQuotient(lcm, *h.leadingKey()), h.leadingCoefficient().inverse()) * h;
    return left - right;
}

/// Buchberger completion followed by minimalization and tail reduction. Every
/// S-pair is reduced: in the operator algebra even generators with disjoint
/// leading supports interact through commutators, so no pair-dropping
/// criterion from the commutative theory is applied.
template <class Poly>
std::vector<Poly> buchbergerImpl(const std::vector<Poly>& generators) {
    std::vector<Poly> basis;
    for (const Poly& g : generators) {
        if (!g.isZero()) basis.push_back(makeMonic(g));
    }
    std::deque<std::pair<std::size_t, std::size_t>> pending;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) pending.emplace_back(i, j);
    }
    while (!pending.empty()) {
        auto [i, j] = pending.front();
        pending.pop_front();
        Poly remainder = reduceImpl(sPair(basis[i], basis[j]), basis);
        if (remainder.isZero()) continue;
        basis.push_back(makeMonic(remainder));
        for (std::size_t k = 0; k + 1 < basis.size(); ++k) pending.emplace_back(k, basis.size() - 1);
    }

    // Minimal basis: ascending leads, so every proper divisor is seen first.
    std::sort(basis.begin(), basis.end(), [](const Poly& a, const Poly& b) {
        return WeylOrderCompare{}(*a.leadingKey(), *b.leadingKey());
    });
    std::vector<Poly> minimal;
    for (const Poly& g : basis) {
        bool redundant = false;
        for (const Poly& h : minimal) {
            if (dividesComponentwise(*h.leadingKey(), *g.leadingKey())) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(g);
    }

    // Tail reduction against the other members; leads are irreducible, so
    // they survive and one pass reaches the reduced basis.
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j) {
            if (j != i) others.push_back(minimal[j]);
        }
        reduced.push_back(reduceImpl(minimal[i], others));
    }
    return reduced;
}

}  // namespace

ExactWeyl reduceByBasis(const ExactWeyl& f, const std::vector<ExactWeyl>& basis) {
    return reduceImpl(f, basis);
}

SymbolPoly reduceByBasis(const SymbolPoly& f, const std::vector<SymbolPoly>& basis) {
    return reduceImpl(f, basis);
}

std::vector<ExactWeyl> leftBuchberger(const FilteredPresentation& p) {
    return buchbergerImpl(p.relations);
}

std::vector<SymbolPoly> commutativeBuchberger(const std::vector<SymbolPoly>& generators) {
    return buchbergerImpl(generators);
}

SymbolPoly topWeightForm(const ExactWeyl& p) {
    SymbolPoly out = SymbolPoly::zero(p.varCount());
    const int w = p.order();
    if (w < 0) return out;
    p.forEachTerm([&](const MultiIndex& key, const RatFun& c) {
        if (dBlockDegree(key) == w) out = out + SymbolPoly::term(key, c);
    });
    return out;
}

std::vector<SymbolPoly> initialIdeal(const std::vector<ExactWeyl>& groebnerBasis) {
    std::vector<SymbolPoly> out;
    for (const ExactWeyl& g : groebnerBasis) {
        if (g.isZero()) continue;
        out.push_back(topWeightForm(g).monic());
    }
    return out;
}

int krullDimension(const std::vector<SymbolPoly>& ideal, int varCount) {
    const unsigned total = 2u * static_cast<unsigned>(varCount);
    std::vector<unsigned> supports;
    for (const SymbolPoly& g : commutativeBuchberger(ideal)) {
        const MultiIndex lead = *g.leadingKey();
        unsigned mask = 0;
        for (std::size_t i = 0; i < lead.size(); ++i) {
            if (lead[i] > 0) mask |= 1u << i;
        }
        if (mask == 0) return -1;  // unit ideal: empty variety
        supports.push_back(mask);
    }
    int best = 0;
    for (unsigned subset = 0; subset < (1u << total); ++subset) {
        bool independent = true;
        for (unsigned mask : supports) {
            if ((mask & ~subset) == 0) {
                independent = false;
                break;
            }
        }
        if (independent) best = std::max(best, static_cast<int>(__builtin_popcount(subset)));
    }
    return best;
}

CharVarietyReport analyzeCharVariety(const FilteredPresentation& p) {
    CharVarietyReport report;
    report.varCount = p.varCount;
    const std::vector<ExactWeyl> gb = leftBuchberger(p);
    for (const ExactWeyl& g : gb) {
        if (!g.isZero() && totalDegree(*g.leadingKey()) == 0) {
            report.moduleIsZero = true;
        }
    }
    if (report.moduleIsZero) {
        report.charDimension = -1;
        report.holonomic = true;
        return report;
    }
    report.initialIdealGenerators = initialIdeal(gb);
    report.charDimension = krullDimension(report.initialIdealGenerators, p.varCount);
    report.holonomic = report.charDimension == p.varCount;
    report.dimensionBelowVarCount = report.charDimension < p.varCount;
    return report;
}

}  // namespace tatedr
