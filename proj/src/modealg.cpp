#include "raviolo/modealg.hpp"

#include <algorithm>
#include <sstream>

namespace rav::ma {

// --------------------------------------------------------------------------
// PolyMN
// --------------------------------------------------------------------------

void PolyMN::normalize() {
    std::sort(monos_.begin(), monos_.end(), [](const Mono& a, const Mono& b) {
        return std::pair(a.em, a.en) < std::pair(b.em, b.en);
    });
    std::vector<Mono> out;
    for (auto& mo : monos_) {
        if (!out.empty() && out.back().em == mo.em && out.back().en == mo.en)
            out.back().c += mo.c;
        else
            out.push_back(mo);
    }
    std::erase_if(out, [](const Mono& m) { return m.c.is_zero(); });
    monos_ = std::move(out);
}

PolyMN PolyMN::constant(const Rat& c) {
    PolyMN p;
    p.monos_ = {{0, 0, c}};
    p.normalize();
    return p;
}

PolyMN PolyMN::linear(const Rat& cm, const Rat& cn, const Rat& c0) {
    PolyMN p;
    p.monos_ = {{1, 0, cm}, {0, 1, cn}, {0, 0, c0}};
    p.normalize();
    return p;
}

PolyMN PolyMN::falling_of(const Rat& am, const Rat& an, const Rat& a0, int d) {
    PolyMN p = constant(Rat(1));
    for (int i = 0; i < d; ++i) p = p * linear(am, an, a0 - Rat(i));
    return p;
}

PolyMN PolyMN::binom_m(int k) {
    PolyMN p = falling_of(Rat(1), Rat(0), Rat(0), k);
    Rat fact(1);
    for (int i = 2; i <= k; ++i) fact *= Rat(i);
    p.scale(Rat(1) / fact);
    return p;
}

PolyMN& PolyMN::operator+=(const PolyMN& o) {
    monos_.insert(monos_.end(), o.monos_.begin(), o.monos_.end());
    normalize();
    return *this;
}

PolyMN operator*(const PolyMN& a, const PolyMN& b) {
    PolyMN r;
    for (const auto& x : a.monos_)
        for (const auto& y : b.monos_)
            r.monos_.push_back({x.em + y.em, x.en + y.en, x.c * y.c});
    r.normalize();
    return r;
}

PolyMN& PolyMN::scale(const Rat& c) {
    if (c.is_zero()) {
        monos_.clear();
        return *this;
    }
    for (auto& m : monos_) m.c *= c;
    return *this;
}

Rat PolyMN::eval(std::int64_t m, std::int64_t n) const {
    Rat total;
    for (const auto& mo : monos_) {
        Rat t = mo.c;
        for (int i = 0; i < mo.em; ++i) t *= Rat(m);
        for (int i = 0; i < mo.en; ++i) t *= Rat(n);
        total += t;
    }
    return total;
}

std::string PolyMN::str() const {
    if (monos_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& mo : monos_) {
        if (!first) os << " + ";
        first = false;
        os << mo.c.str();
        for (int i = 0; i < mo.em; ++i) os << "*m";
        for (int i = 0; i < mo.en; ++i) os << "*n";
    }
    return os.str();
}

// --------------------------------------------------------------------------
// ModeAlgebra
// --------------------------------------------------------------------------

namespace {

void add_to(Combo& c, const ModeKey& k, const Rat& v) {
    if (v.is_zero()) return;
    auto it = c.find(k);
    if (it == c.end()) {
        c.emplace(k, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) c.erase(it);
    }
}

std::uint64_t pack_key(const ModeKey& a, const ModeKey& b) {
    if (a.first >= 256 || b.first >= 256 || a.second >= (1 << 20) ||
        b.second >= (1 << 20) || a.second < 0 || b.second < 0)
        throw math_error("mode out of range for bracket cache");
    return (std::uint64_t(a.first) << 48) | (std::uint64_t(a.second) << 28) |
           (std::uint64_t(b.first) << 20) | std::uint64_t(b.second);
}

} // namespace

int ModeAlgebra::add_gen(GenInfo info) {
    gens_.push_back(std::move(info));
    return static_cast<int>(gens_.size()) - 1;
}

void ModeAlgebra::set_bracket(int a, int b, std::vector<BracketPiece> pieces) {
    if (a < 0 || a >= num_gens() || b < 0 || b >= num_gens())
        throw math_error("set_bracket: generator id out of range");
    auto key = std::make_pair(a, b);
    if (table_.count(key))
        throw math_error("set_bracket: pair already has a formula: " +
                         gens_[static_cast<std::size_t>(a)].name + ", " +
                         gens_[static_cast<std::size_t>(b)].name);
    for (const auto& piece : pieces)
        for (const auto& t : piece.terms) {
            if (t.target < 0 || t.target >= num_gens())
                throw math_error("set_bracket: target generator out of range");
            if (gens_[static_cast<std::size_t>(t.target)].central &&
                (t.im != 0 || t.in != 0 || t.i0 != 0))
                throw math_error("set_bracket: central target must have index 0");
        }
    table_.emplace(key, std::move(pieces));
}

int ModeAlgebra::find(const std::string& name) const {
    for (int i = 0; i < num_gens(); ++i)
        if (gens_[static_cast<std::size_t>(i)].name == name) return i;
    throw math_error("no generator named '" + name + "' in " + name_);
}

Rat ModeAlgebra::spin_of(const ModeKey& mode) const {
    const GenInfo& g = gen(mode.first);
    return g.spin0 + g.spin1 * Rat(mode.second);
}

Combo ModeAlgebra::eval_pieces(const std::vector<BracketPiece>& pieces,
                               std::int64_t m, std::int64_t n) const {
    Combo out;
    for (const auto& piece : pieces) {
        bool ok = true;
        for (const auto& g : piece.guards)
            if (!g.holds(m, n)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        for (const auto& t : piece.terms) {
            Rat c = t.coeff.eval(m, n);
            if (c.is_zero()) continue;
            const std::int64_t idx = t.im * m + t.in * n + t.i0;
            if (idx < 0)
                throw math_error("bracket formula produced a negative mode index for " +
                                 gens_[static_cast<std::size_t>(t.target)].name);
            add_to(out, {t.target, static_cast<int>(idx)}, c);
        }
    }
    return out;
}

const Combo& ModeAlgebra::bracket(const ModeKey& a, const ModeKey& b) const {
    const std::uint64_t key = pack_key(a, b);
    auto hit = cache_.find(key);
    if (hit != cache_.end()) return hit->second;

    Combo result;
    auto direct = table_.find({a.first, b.first});
    if (direct != table_.end()) {
        result = eval_pieces(direct->second, a.second, b.second);
    } else {
        auto rev = table_.find({b.first, a.first});
        if (rev != table_.end()) {
            Combo c = eval_pieces(rev->second, b.second, a.second);
            const bool both_odd = gen(a.first).odd && gen(b.first).odd;
            // [x, y] = -(-1)^{|x||y|} [y, x]
            const Rat factor = both_odd ? Rat(1) : Rat(-1);
            for (const auto& [k, v] : c) add_to(result, k, factor * v);
        } else if (gen(a.first).central || gen(b.first).central) {
            // central elements bracket to zero with everything
        } else {
            throw math_error("no bracket rule for pair (" + gen(a.first).name +
                             ", " + gen(b.first).name + ") in " + name_);
        }
    }
    return cache_.emplace(key, std::move(result)).first->second;
}

Combo bracket_combos(const ModeAlgebra& alg, const Combo& a, const Combo& b) {
    Combo out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            const Combo& br = alg.bracket(ka, kb);
            const Rat f = ca * cb;
            for (const auto& [k, v] : br) add_to(out, k, f * v);
        }
    return out;
}

Combo jacobiator(const ModeAlgebra& alg, const ModeKey& x, const ModeKey& y,
                 const ModeKey& z) {
    const bool px = alg.gen(x.first).odd, py = alg.gen(y.first).odd,
               pz = alg.gen(z.first).odd;
    const Rat s1((px && pz) ? -1 : 1);
    const Rat s2((py && px) ? -1 : 1);
    const Rat s3((pz && py) ? -1 : 1);
    Combo one{{x, Rat(1)}}, two{{y, Rat(1)}}, three{{z, Rat(1)}};
    Combo j;
    auto fold = [&](const Combo& inner, const Combo& outer, const Rat& s) {
        Combo t = bracket_combos(alg, inner, outer);
        for (const auto& [k, v] : t) add_to(j, k, s * v);
    };
    fold(bracket_combos(alg, one, two), three, s1);
    fold(bracket_combos(alg, two, three), one, s2);
    fold(bracket_combos(alg, three, one), two, s3);
    return j;
}

std::vector<ModeKey> ModeAlgebra::modes_up_to(int cutoff) const {
    std::vector<ModeKey> modes;
    for (int g = 0; g < num_gens(); ++g) {
        if (gen(g).central) continue; // brackets with central modes vanish
        for (int i = 0; i <= cutoff; ++i) modes.push_back({g, i});
    }
    return modes;
}

std::optional<JacobiFailure> ModeAlgebra::check_jacobi(int cutoff) const {
    const std::vector<ModeKey> modes = modes_up_to(cutoff);
    const std::size_t n = modes.size();
    std::vector<bool> odd(n);
    for (std::size_t i = 0; i < n; ++i) odd[i] = gen(modes[i].first).odd;

    Combo jac;
    auto fold = [&](const ModeKey& a, const ModeKey& b, const ModeKey& c,
                    bool negate) {
        const Combo& ab = bracket(a, b);
        for (const auto& [k, v] : ab) {
            const Combo& kc = bracket(k, c);
            const Rat f = negate ? -v : v;
            for (const auto& [k2, v2] : kc) add_to(jac, k2, f * v2);
        }
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                jac.clear();
                fold(modes[i], modes[j], modes[k], odd[i] && odd[k]);
                fold(modes[j], modes[k], modes[i], odd[j] && odd[i]);
                fold(modes[k], modes[i], modes[j], odd[k] && odd[j]);
                if (!jac.empty())
                    return JacobiFailure{modes[i], modes[j], modes[k],
                                         "jacobiator(" + mode_str(modes[i]) + ", " +
                                             mode_str(modes[j]) + ", " +
                                             mode_str(modes[k]) +
                                             ") = " + combo_str(jac)};
            }
    return std::nullopt;
}

std::optional<std::string> ModeAlgebra::check_antisymmetry(int cutoff) const {
    for (const auto& [pair, pieces] : table_) {
        auto rev = table_.find({pair.second, pair.first});
        if (rev == table_.end()) continue; // the reverse is derived, so exact
        const bool both_odd = gen(pair.first).odd && gen(pair.second).odd;
        const Rat factor = both_odd ? Rat(1) : Rat(-1);
        for (int m = 0; m <= cutoff; ++m)
            for (int n = 0; n <= cutoff; ++n) {
                Combo lhs = eval_pieces(pieces, m, n);
                Combo flipped;
                for (const auto& [k, v] : eval_pieces(rev->second, n, m))
                    add_to(flipped, k, factor * v);
                if (lhs != flipped)
                    return "graded antisymmetry violated at [" +
                           gen(pair.first).name + "_" + std::to_string(m) + ", " +
                           gen(pair.second).name + "_" + std::to_string(n) +
                           "]: " + combo_str(lhs) + " vs " + combo_str(flipped);
            }
    }
    return std::nullopt;
}

std::optional<std::string> ModeAlgebra::check_gradings(int cutoff) const {
    for (const auto& [pair, pieces] : table_) {
        const GenInfo& ga = gen(pair.first);
        const GenInfo& gb = gen(pair.second);
        for (int m = 0; m <= cutoff; ++m)
            for (int n = 0; n <= cutoff; ++n)
                for (const auto& piece : pieces) {
                    bool ok = true;
                    for (const auto& gd : piece.guards)
                        if (!gd.holds(m, n)) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    for (const auto& t : piece.terms) {
                        if (t.coeff.eval(m, n).is_zero()) continue;
                        const GenInfo& gt = gen(t.target);
                        const std::int64_t idx = t.im * m + t.in * n + t.i0;
                        if (idx < 0) continue; // caught as an error elsewhere
                        const Rat spin_out = gt.spin0 + gt.spin1 * Rat(idx);
                        const Rat spin_in = ga.spin0 + ga.spin1 * Rat(m) +
                                            gb.spin0 + gb.spin1 * Rat(n);
                        const bool parity_ok = gt.odd == (ga.odd != gb.odd);
                        if (gt.r != ga.r + gb.r || gt.s != ga.s + gb.s ||
                            spin_out != spin_in || !parity_ok)
                            return "grading violated in [" + ga.name + "_" +
                                   std::to_string(m) + ", " + gb.name + "_" +
                                   std::to_string(n) + "] -> " + gt.name + "_" +
                                   std::to_string(idx);
                    }
                }
    }
    return std::nullopt;
}

std::optional<std::string> ModeAlgebra::check_positive_closed(int) const {
    for (const auto& [pair, pieces] : table_) {
        const GenInfo& ga = gen(pair.first);
        const GenInfo& gb = gen(pair.second);
        if (!ga.positive || !gb.positive) continue;
        for (const auto& piece : pieces)
            for (const auto& t : piece.terms) {
                if (t.coeff.is_zero()) continue;
                if (!gen(t.target).positive)
                    return "bracket [" + ga.name + ", " + gb.name +
                           "] leaves the positive subalgebra (target " +
                           gen(t.target).name + ")";
            }
    }
    return std::nullopt;
}

std::string ModeAlgebra::mode_str(const ModeKey& m) const {
    const GenInfo& g = gen(m.first);
    if (g.central) return g.name;
    return g.name + "_" + std::to_string(m.second);
}

std::string ModeAlgebra::combo_str(const Combo& c) const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c) {
        if (!first) os << " + ";
        first = false;
        if (v == Rat(1))
            os << mode_str(k);
        else
            os << v.str() << "*" << mode_str(k);
    }
    return os.str();
}

// --------------------------------------------------------------------------
// VacuumModule
// --------------------------------------------------------------------------

VacuumModule::VacuumModule(const ModeAlgebra& alg, const Rat& spin_cutoff,
                           bool universal)
    : alg_(alg), cutoff_(spin_cutoff) {
    acts_as_zero_.resize(static_cast<std::size_t>(alg.num_gens()));
    odd_.resize(static_cast<std::size_t>(alg.num_gens()));
    for (int g = 0; g < alg.num_gens(); ++g) {
        const GenInfo& gi = alg.gen(g);
        acts_as_zero_[static_cast<std::size_t>(g)] =
            gi.positive && !(universal && gi.central);
        odd_[static_cast<std::size_t>(g)] = gi.odd;
    }

    // The induced module only makes sense if declared-positive brackets stay
    // inside the (marked) positive span.
    for (const auto& [pair, pieces] : alg.table_) {
        if (!acts_as_zero_[static_cast<std::size_t>(pair.first)] ||
            !acts_as_zero_[static_cast<std::size_t>(pair.second)])
            continue;
        for (const auto& piece : pieces)
            for (const auto& t : piece.terms) {
                if (t.coeff.is_zero()) continue;
                if (!acts_as_zero_[static_cast<std::size_t>(t.target)])
                    throw math_error(
                        "positive subalgebra is not closed: [" +
                        alg.gen(pair.first).name + ", " + alg.gen(pair.second).name +
                        "] contains " + alg.gen(t.target).name);
            }
    }

    // Creation letters, ascending by (generator, index).
    std::vector<ModeKey> letters;
    for (int g = 0; g < alg.num_gens(); ++g) {
        if (acts_as_zero_[static_cast<std::size_t>(g)]) continue;
        const GenInfo& gi = alg.gen(g);
        if (gi.central) {
            if (!gi.odd)
                throw math_error("cannot enumerate a basis with an even zero-spin letter: " +
                                 gi.name);
            if (gi.spin0 <= cutoff_) letters.push_back({g, 0});
            continue;
        }
        if (!(gi.spin1 > Rat(0)))
            throw math_error("creation tower " + gi.name +
                             " does not have increasing spin; basis would be infinite");
        if (gi.spin0 <= Rat(0) && !gi.odd)
            throw math_error("even creation letter with non-positive spin: " + gi.name);
        for (int m = 0;; ++m) {
            const Rat sp = gi.spin0 + gi.spin1 * Rat(m);
            if (sp > cutoff_) break;
            letters.push_back({g, m});
        }
    }

    Word cur;
    enumerate(letters, 0, cur, Rat(0));
}

void VacuumModule::enumerate(std::vector<ModeKey>& letters, std::size_t from,
                             Word& cur, const Rat& spin_used) {
    basis_.push_back(cur);
    for (std::size_t i = from; i < letters.size(); ++i) {
        const Rat sp = alg_.spin_of(letters[i]);
        if (spin_used + sp > cutoff_) continue;
        cur.push_back(letters[i]);
        const bool odd = alg_.gen(letters[i].first).odd;
        enumerate(letters, odd ? i + 1 : i, cur, spin_used + sp);
        cur.pop_back();
    }
}

Rat VacuumModule::spin_of(const Word& w) const {
    Rat s;
    for (const auto& l : w) s += alg_.spin_of(l);
    return s;
}

bool VacuumModule::in_basis(const Word& w) const {
    return std::binary_search(basis_.begin(), basis_.end(), w);
}

bool VacuumModule::insert_letter(const ModeKey& l, bool odd_letter,
                                 const std::vector<bool>& odd, Word& w, int& sign) {
    std::size_t pos = 0;
    while (pos < w.size() && w[pos] < l) {
        if (odd_letter && odd[static_cast<std::size_t>(w[pos].first)]) sign = -sign;
        ++pos;
    }
    if (odd_letter && pos < w.size() && w[pos] == l) return false;
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), l);
    return true;
}

ModState VacuumModule::apply_to_word(const ModeKey& mode, const Word& w) const {
    ModState out;
    const bool mode_odd = odd_[static_cast<std::size_t>(mode.first)];

    if (!acts_as_zero_[static_cast<std::size_t>(mode.first)]) {
        Word nw = w;
        int sign = 1;
        if (!insert_letter(mode, mode_odd, odd_, nw, sign)) return out;
        out.emplace(std::move(nw), Rat(sign));
        return out;
    }

    if (w.empty()) return out; // positive modes kill the vacuum
    const ModeKey head = w.front();
    const Word rest(w.begin() + 1, w.end());

    // [x, l] acting on the tail...
    const Combo& br = alg_.bracket(mode, head);
    for (const auto& [t, c] : br) {
        ModState sub = apply_to_word(t, rest);
        for (auto& [word, v] : sub) {
            Rat val = c * v;
            if (!val.is_zero()) {
                auto it = out.find(word);
                if (it == out.end())
                    out.emplace(word, val);
                else {
                    it->second += val;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
    }

    // ...plus the graded swap past the head letter.
    const bool head_odd = odd_[static_cast<std::size_t>(head.first)];
    const Rat swap_sign((mode_odd && head_odd) ? -1 : 1);
    ModState rec = apply_to_word(mode, rest);
    for (const auto& [word, v] : rec) {
        Word nw = word;
        int sign = 1;
        if (!insert_letter(head, head_odd, odd_, nw, sign)) continue;
        Rat val = swap_sign * Rat(sign) * v;
        if (val.is_zero()) continue;
        auto it = out.find(nw);
        if (it == out.end())
            out.emplace(std::move(nw), val);
        else {
            it->second += val;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

ModState VacuumModule::apply(const ModeKey& mode, const ModState& s) const {
    ModState out;
    for (const auto& [word, c] : s) {
        ModState part = apply_to_word(mode, word);
        for (const auto& [nw, v] : part) {
            Rat val = c * v;
            if (val.is_zero()) continue;
            auto it = out.find(nw);
            if (it == out.end())
                out.emplace(nw, val);
            else {
                it->second += val;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

ModState VacuumModule::apply(const Combo& combo, const ModState& s) const {
    ModState out;
    for (const auto& [mode, c] : combo) {
        ModState part = apply(mode, s);
        for (const auto& [nw, v] : part) {
            Rat val = c * v;
            if (val.is_zero()) continue;
            auto it = out.find(nw);
            if (it == out.end())
                out.emplace(nw, val);
            else {
                it->second += val;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

std::string VacuumModule::word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (const auto& l : w) os << alg_.mode_str(l) << " ";
    os << "1";
    return os.str();
}

std::string VacuumModule::str(const ModState& s) const {
    if (s.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : s) {
        if (!first) os << " + ";
        first = false;
        if (c == Rat(1))
            os << word_str(w);
        else
            os << c.str() << "*" << word_str(w);
    }
    return os.str();
}

// --------------------------------------------------------------------------
// ModeMorphism
// --------------------------------------------------------------------------

Combo ModeMorphism::map(const ModeKey& mode) const {
    Combo out;
    for (const auto& [dg, c] : images.at(static_cast<std::size_t>(mode.first)))
        add_to(out, {dg, mode.second}, c);
    return out;
}

Combo ModeMorphism::map(const Combo& combo) const {
    Combo out;
    for (const auto& [k, v] : combo) {
        Combo part = map(k);
        for (const auto& [dk, dv] : part) add_to(out, dk, v * dv);
    }
    return out;
}

std::optional<std::string> ModeMorphism::check_intertwines(int cutoff) const {
    for (int a = 0; a < src->num_gens(); ++a)
        for (int b = a; b < src->num_gens(); ++b) {
            const int amax = src->gen(a).central ? 0 : cutoff;
            const int bmax = src->gen(b).central ? 0 : cutoff;
            for (int ia = 0; ia <= amax; ++ia)
                for (int ib = 0; ib <= bmax; ++ib) {
                    const ModeKey x{a, ia}, y{b, ib};
                    Combo lhs = map(src->bracket(x, y));
                    Combo rhs = bracket_combos(*dst, map(x), map(y));
                    if (lhs != rhs)
                        return "morphism does not intertwine at [" +
                               src->mode_str(x) + ", " + src->mode_str(y) +
                               "]: " + dst->combo_str(lhs) + " vs " +
                               dst->combo_str(rhs);
                }
        }
    return std::nullopt;
}

// --------------------------------------------------------------------------
// FieldSpec
// --------------------------------------------------------------------------

int FieldSpec::add_field(Field f) {
    fields_.push_back(std::move(f));
    return static_cast<int>(fields_.size()) - 1;
}

void FieldSpec::set_ope(int a, int b, OpeSingular s) {
    if (a < 0 || a >= num_fields() || b < 0 || b >= num_fields())
        throw math_error("set_ope: field id out of range");
    auto key = std::make_pair(a, b);
    if (ope_.count(key))
        throw math_error("set_ope: OPE already declared for (" +
                         fields_[static_cast<std::size_t>(a)].name + ", " +
                         fields_[static_cast<std::size_t>(b)].name + ")");
    // Normalize away zero terms and empty levels.
    for (auto it = s.begin(); it != s.end();) {
        std::erase_if(it->second, [](const FieldTerm& t) { return t.c.is_zero(); });
        if (it->second.empty())
            it = s.erase(it);
        else
            ++it;
    }
    ope_.emplace(key, std::move(s));
}

int FieldSpec::find(const std::string& name) const {
    for (int i = 0; i < num_fields(); ++i)
        if (fields_[static_cast<std::size_t>(i)].name == name) return i;
    throw math_error("no field named '" + name + "' in " + name_);
}

bool FieldSpec::declared(int a, int b) const {
    return ope_.count({a, b}) || ope_.count({b, a});
}

int FieldSpec::max_level(int a, int b) const {
    auto it = ope_.find({a, b});
    if (it == ope_.end()) it = ope_.find({b, a});
    if (it == ope_.end() || it->second.empty()) return -1;
    return it->second.rbegin()->first;
}

namespace {

void push_term(FieldCombo& combo, const FieldTerm& t) {
    if (t.c.is_zero()) return;
    for (auto& u : combo)
        if (u.field == t.field && u.d == t.d) {
            u.c += t.c;
            return;
        }
    combo.push_back(t);
}

void normalize_combo(FieldCombo& combo) {
    std::erase_if(combo, [](const FieldTerm& t) { return t.c.is_zero(); });
    std::sort(combo.begin(), combo.end(), [](const FieldTerm& a, const FieldTerm& b) {
        return std::pair(a.field, a.d) < std::pair(b.field, b.d);
    });
}

} // namespace

FieldCombo FieldSpec::coeff(int a, int b, int level) const {
    auto it = ope_.find({a, b});
    if (it != ope_.end()) {
        auto lv = it->second.find(level);
        return lv == it->second.end() ? FieldCombo{} : lv->second;
    }
    auto rev = ope_.find({b, a});
    if (rev == ope_.end())
        throw math_error("no OPE declared for fields (" +
                         fields_[static_cast<std::size_t>(a)].name + ", " +
                         fields_[static_cast<std::size_t>(b)].name + ")");

    // OPE skew-symmetry:
    //   (A_{(m)} B) = (-1)^{|A||B|} sum_l ((-1)^{m+l} / l!) d^l (B_{(m+l)} A).
    const bool both_odd = fields_[static_cast<std::size_t>(a)].odd &&
                          fields_[static_cast<std::size_t>(b)].odd;
    const Rat sgn(both_odd ? -1 : 1);
    FieldCombo out;
    const int top = rev->second.empty() ? -1 : rev->second.rbegin()->first;
    Rat lfact(1);
    for (int l = 0; level + l <= top; ++l) {
        if (l > 0) lfact *= Rat(l);
        auto lv = rev->second.find(level + l);
        if (lv == rev->second.end()) continue;
        const Rat f = sgn * Rat(((level + l) % 2 == 0) ? 1 : -1) / lfact;
        for (const auto& t : lv->second) {
            if (fields_[static_cast<std::size_t>(t.field)].central && t.d + l > 0)
                continue; // derivatives of central fields vanish
            push_term(out, {t.field, t.d + l, f * t.c});
        }
    }
    normalize_combo(out);
    return out;
}

// --------------------------------------------------------------------------
// OPE -> mode-bracket compiler
// --------------------------------------------------------------------------

ModeAlgebra compile_mode_algebra(const FieldSpec& spec) {
    ModeAlgebra alg(spec.name());
    const int nf = spec.num_fields();
    std::vector<int> ann(static_cast<std::size_t>(nf), -1),
        cre(static_cast<std::size_t>(nf), -1), cen(static_cast<std::size_t>(nf), -1);

    for (int i = 0; i < nf; ++i) {
        const auto& f = spec.field(i);
        if (f.central) {
            cen[static_cast<std::size_t>(i)] = alg.add_gen(
                {f.name, f.odd, /*positive=*/true, /*central=*/true, f.r, f.s,
                 f.spin, Rat(0)});
        } else {
            ann[static_cast<std::size_t>(i)] = alg.add_gen(
                {f.ann_name, !f.odd, /*positive=*/true, /*central=*/false,
                 f.r - Rat(1), f.s, f.spin - Rat(1), Rat(-1)});
            cre[static_cast<std::size_t>(i)] = alg.add_gen(
                {f.cre_name, f.odd, /*positive=*/false, /*central=*/false, f.r,
                 f.s, f.spin, Rat(1)});
        }
    }

    for (int a = 0; a < nf; ++a) {
        if (spec.field(a).central) continue;
        for (int b = 0; b < nf; ++b) {
            if (spec.field(b).central) continue;
            if (!spec.declared(a, b))
                throw math_error("cannot compile: no OPE declared for (" +
                                 spec.field(a).name + ", " + spec.field(b).name + ")");
            const int top = spec.max_level(a, b);
            const Rat sgn_ann(spec.field(a).odd ? 1 : -1); // (-1)^{|A|+1}

            std::vector<BracketPiece> ann_ann, ann_cre;
            for (int k = 0; k <= top; ++k) {
                FieldCombo terms = spec.coeff(a, b, k);
                if (terms.empty()) continue;

                // [A_m, B_n] = (-1)^{|A|+1} sum_k binom(m,k) (A_{(k)}B)_{(m+n-k)}
                BracketPiece pa; // no guards: the polynomials vanish off-domain
                for (const auto& t : terms) {
                    if (spec.field(t.field).central) continue; // no ann modes
                    BracketTerm bt;
                    bt.target = ann[static_cast<std::size_t>(t.field)];
                    bt.im = 1;
                    bt.in = 1;
                    bt.i0 = -k - t.d;
                    // (d^d X)_{(t)} = (-1)^d falling(t, d) X_{(t-d)}
                    PolyMN p = PolyMN::binom_m(k) *
                               PolyMN::falling_of(Rat(1), Rat(1), Rat(-k), t.d);
                    p.scale(sgn_ann * t.c * Rat(t.d % 2 == 0 ? 1 : -1));
                    if (!p.is_zero()) {
                        bt.coeff = std::move(p);
                        pa.terms.push_back(std::move(bt));
                    }
                }
                if (!pa.terms.empty()) ann_ann.push_back(std::move(pa));

                // [A_m, B_{-n-1}] = sum_k binom(m,k) (A_{(k)}B)_{(-(n-m+k)-1)}
                BracketPiece pc, pz;
                pc.guards.push_back({-1, 1, k, /*eq=*/false}); // n - m + k >= 0
                pz.guards.push_back({-1, 1, k, /*eq=*/true});  // n - m + k == 0
                for (const auto& t : terms) {
                    BracketTerm bt;
                    if (spec.field(t.field).central) {
                        if (t.d != 0) continue; // normalized away already
                        bt.target = cen[static_cast<std::size_t>(t.field)];
                        bt.im = bt.in = bt.i0 = 0;
                        PolyMN p = PolyMN::binom_m(k);
                        p.scale(t.c);
                        if (!p.is_zero()) {
                            bt.coeff = std::move(p);
                            pz.terms.push_back(std::move(bt));
                        }
                    } else {
                        bt.target = cre[static_cast<std::size_t>(t.field)];
                        bt.im = -1;
                        bt.in = 1;
                        bt.i0 = k + t.d;
                        // (d^d X)_{(-kap-1)} = falling(kap+d, d) X_{(-(kap+d)-1)}
                        PolyMN p = PolyMN::binom_m(k) *
                                   PolyMN::falling_of(Rat(-1), Rat(1), Rat(k + t.d), t.d);
                        p.scale(t.c);
                        if (!p.is_zero()) {
                            bt.coeff = std::move(p);
                            pc.terms.push_back(std::move(bt));
                        }
                    }
                }
                if (!pc.terms.empty()) ann_cre.push_back(std::move(pc));
                if (!pz.terms.empty()) ann_cre.push_back(std::move(pz));
            }

            alg.set_bracket(ann[static_cast<std::size_t>(a)],
                            ann[static_cast<std::size_t>(b)], std::move(ann_ann));
            alg.set_bracket(ann[static_cast<std::size_t>(a)],
                            cre[static_cast<std::size_t>(b)], std::move(ann_cre));
            alg.set_bracket(cre[static_cast<std::size_t>(a)],
                            cre[static_cast<std::size_t>(b)], {});
        }
    }
    return alg;
}

} // namespace rav::ma
