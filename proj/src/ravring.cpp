#include "raviolo/ravring.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace rav {

namespace {
// Product of two monomial weights in one variable, or nothing when the
// product vanishes (tower*tower, or a z-power overshooting a tower index).
std::optional<int> weight_mul(int a, int b) {
    if (a < 0 && b < 0) return std::nullopt;
    int s = a + b;
    if ((a < 0 || b < 0) && s >= 0) return std::nullopt;
    return s;
}
// Truncation bound for a product term: an exact factor contributes no bound.
int sat_add(int a, int b) {
    if (a == kExactOrder || b == kExactOrder) return kExactOrder;
    long long s = static_cast<long long>(a) + b;
    if (s >= kExactOrder) return kExactOrder;
    return static_cast<int>(s);
}
std::string weight_str(int w, const char* var, const char* tower) {
    std::ostringstream os;
    if (w >= 0) {
        os << var;
        if (w != 1) os << "^" << w;
        if (w == 0) return "";
    } else {
        os << tower << "^" << (-w - 1);
    }
    return os.str();
}
} // namespace

RavSeries RavSeries::z_pow(int n, int trunc) {
    RavSeries r(trunc);
    r.add_weight(weight_of_z(n), Scalar(1));
    return r;
}
RavSeries RavSeries::omega(int m, int trunc) {
    RavSeries r(trunc);
    r.add_weight(weight_of_omega(m), Scalar(1));
    return r;
}

Scalar RavSeries::at_weight(int weight) const {
    if (!trusted(weight))
        throw TruncationError("coefficient at weight " + std::to_string(weight) +
                              " is at or beyond truncation order " + std::to_string(trunc_));
    auto it = coeffs_.find(weight);
    return it == coeffs_.end() ? Scalar() : it->second;
}

void RavSeries::set_weight(int weight, const Scalar& value) {
    if (weight >= trunc_) return;
    if (value.is_zero())
        coeffs_.erase(weight);
    else
        coeffs_[weight] = value;
}

void RavSeries::add_weight(int weight, const Scalar& value) {
    if (weight >= trunc_ || value.is_zero()) return;
    auto [it, fresh] = coeffs_.emplace(weight, value);
    if (!fresh) {
        it->second += value;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

void RavSeries::clamp() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = it->first >= trunc_ ? coeffs_.erase(it) : std::next(it);
}

RavSeries& RavSeries::operator+=(const RavSeries& o) {
    trunc_ = std::min(trunc_, o.trunc_);
    clamp();
    for (const auto& [w, c] : o.coeffs_) add_weight(w, c);
    return *this;
}
RavSeries& RavSeries::operator-=(const RavSeries& o) {
    trunc_ = std::min(trunc_, o.trunc_);
    clamp();
    for (const auto& [w, c] : o.coeffs_) add_weight(w, -c);
    return *this;
}

RavSeries operator*(const RavSeries& a, const RavSeries& b) {
    RavSeries r(std::min(sat_add(a.trunc_, b.lowest_weight()), sat_add(b.trunc_, a.lowest_weight())));
    for (const auto& [wa, ca] : a.coeffs_)
        for (const auto& [wb, cb] : b.coeffs_)
            if (auto w = weight_mul(wa, wb)) r.add_weight(*w, ca * cb);
    return r;
}

RavSeries operator*(const Scalar& s, RavSeries a) {
    RavSeries r(a.trunc_);
    for (const auto& [w, c] : a.coeffs_) r.add_weight(w, s * c);
    return r;
}

RavSeries RavSeries::derivative() const {
    RavSeries r(trunc_ == kExactOrder ? kExactOrder : trunc_ - 1);
    for (const auto& [w, c] : coeffs_)
        if (w != 0) r.add_weight(w - 1, Rat(w) * c);
    return r;
}

bool RavSeries::agree(const RavSeries& a, const RavSeries& b, int* boundary) {
    int t = std::min(a.trunc_, b.trunc_);
    if (boundary) *boundary = t;
    auto ita = a.coeffs_.begin();
    auto itb = b.coeffs_.begin();
    while (ita != a.coeffs_.end() || itb != b.coeffs_.end()) {
        int wa = ita == a.coeffs_.end() ? kExactOrder : ita->first;
        int wb = itb == b.coeffs_.end() ? kExactOrder : itb->first;
        int w = std::min(wa, wb);
        if (w >= t) return true;
        Scalar ca = wa == w ? (ita++)->second : Scalar();
        Scalar cb = wb == w ? (itb++)->second : Scalar();
        if (ca != cb) return false;
    }
    return true;
}

std::string RavSeries::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        std::string mono = weight_str(w, "z", "Om");
        os << "(" << c.str() << ")" << (mono.empty() ? "" : "*" + mono);
    }
    if (trunc_ != kExactOrder) os << " + O(weight " << trunc_ << ")";
    return os.str();
}

BiRav BiRav::monomial(VarPair vars, int wx, int ww, const Scalar& c, int tx, int tw) {
    BiRav r(vars, tx, tw);
    r.add_mono(wx, ww, c);
    return r;
}

Scalar BiRav::at(int wx, int ww) const {
    if (!trusted(wx, ww))
        throw TruncationError("bivariate coefficient at weights (" + std::to_string(wx) + "," + std::to_string(ww) +
                              ") is at or beyond truncation (" + std::to_string(tx_) + "," + std::to_string(tw_) + ")");
    auto it = coeffs_.find({wx, ww});
    return it == coeffs_.end() ? Scalar() : it->second;
}

void BiRav::add_mono(int wx, int ww, const Scalar& value) {
    if (wx >= tx_ || ww >= tw_ || value.is_zero()) return;
    auto [it, fresh] = coeffs_.emplace(std::make_pair(wx, ww), value);
    if (!fresh) {
        it->second += value;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

int BiRav::lowx() const {
    int lo = kExactOrder;
    for (const auto& [k, c] : coeffs_) lo = std::min(lo, k.first);
    return lo;
}
int BiRav::loww() const {
    int lo = kExactOrder;
    for (const auto& [k, c] : coeffs_) lo = std::min(lo, k.second);
    return lo;
}

void BiRav::clamp() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = (it->first.first >= tx_ || it->first.second >= tw_) ? coeffs_.erase(it) : std::next(it);
}

BiRav& BiRav::operator+=(const BiRav& o) {
    tx_ = std::min(tx_, o.tx_);
    tw_ = std::min(tw_, o.tw_);
    clamp();
    for (const auto& [k, c] : o.coeffs_) add_mono(k.first, k.second, c);
    return *this;
}
BiRav& BiRav::operator-=(const BiRav& o) {
    tx_ = std::min(tx_, o.tx_);
    tw_ = std::min(tw_, o.tw_);
    clamp();
    for (const auto& [k, c] : o.coeffs_) add_mono(k.first, k.second, -c);
    return *this;
}

BiRav operator*(const BiRav& a, const BiRav& b) {
    BiRav r(a.vars_, std::min(sat_add(a.tx_, b.lowx()), sat_add(b.tx_, a.lowx())),
            std::min(sat_add(a.tw_, b.loww()), sat_add(b.tw_, a.loww())));
    for (const auto& [ka, ca] : a.coeffs_)
        for (const auto& [kb, cb] : b.coeffs_) {
            auto wx = weight_mul(ka.first, kb.first);
            if (!wx) continue;
            auto ww = weight_mul(ka.second, kb.second);
            if (!ww) continue;
            // moving a's w-tower past b's x-tower costs a Koszul sign
            bool flip = ka.second < 0 && kb.first < 0;
            Scalar c = ca * cb;
            r.add_mono(*wx, *ww, flip ? -c : c);
        }
    return r;
}

BiRav operator*(const Scalar& s, BiRav a) {
    BiRav r(a.vars_, a.tx_, a.tw_);
    for (const auto& [k, c] : a.coeffs_) r.add_mono(k.first, k.second, s * c);
    return r;
}

BiRav BiRav::d_x() const {
    BiRav r(vars_, tx_ == kExactOrder ? kExactOrder : tx_ - 1, tw_);
    for (const auto& [k, c] : coeffs_)
        if (k.first != 0) r.add_mono(k.first - 1, k.second, Rat(k.first) * c);
    return r;
}
BiRav BiRav::d_w() const {
    BiRav r(vars_, tx_, tw_ == kExactOrder ? kExactOrder : tw_ - 1);
    for (const auto& [k, c] : coeffs_)
        if (k.second != 0) r.add_mono(k.first, k.second - 1, Rat(k.second) * c);
    return r;
}

RavSeries BiRav::residue_x() const {
    if (-1 >= tx_) throw TruncationError("residue lies beyond the x truncation");
    RavSeries r(tw_);
    for (const auto& [k, c] : coeffs_)
        if (k.first == -1) r.add_weight(k.second, c);
    return r;
}

bool BiRav::agree(const BiRav& a, const BiRav& b) {
    int tx = std::min(a.tx_, b.tx_);
    int tw = std::min(a.tw_, b.tw_);
    auto check = [&](const BiRav& x, const BiRav& y) {
        for (const auto& [k, c] : x.coeffs_) {
            if (k.first >= tx || k.second >= tw) continue;
            auto it = y.coeffs_.find(k);
            Scalar other = it == y.coeffs_.end() ? Scalar() : it->second;
            if (other != c) return false;
        }
        return true;
    };
    return check(a, b) && check(b, a);
}

std::string BiRav::str() const {
    if (coeffs_.empty()) return "0";
    const char* xv = vars_ == VarPair::Z_W ? "z" : "(z-w)";
    const char* xo = vars_ == VarPair::Z_W ? "Omz" : "Omzw";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        std::string mx = weight_str(k.first, xv, xo);
        std::string mw = weight_str(k.second, "w", "Omw");
        os << "(" << c.str() << ")";
        if (!mx.empty()) os << "*" << mx;
        if (!mw.empty()) os << "*" << mw;
    }
    return os.str();
}

BiRav expand_zmw_small_w(int m, int order) {
    BiRav r(VarPair::Z_W, kExactOrder, order);
    for (int n = 0; n < order; ++n) r.add_mono(weight_of_omega(n + m), weight_of_z(n), Scalar(Rat(binomial(m + n, n))));
    return r;
}

BiRav expand_zmw_small_z(int m, int order) {
    BiRav r(VarPair::Z_W, order, kExactOrder);
    Rat sign(m % 2 == 0 ? 1 : -1);
    for (int n = 0; n < order; ++n)
        r.add_mono(weight_of_z(n), weight_of_omega(n + m), Scalar(sign * Rat(binomial(m + n, n))));
    return r;
}

BiRav expand_z_around_w(int m, int order) {
    BiRav r(VarPair::ZMW_W, order, kExactOrder);
    for (int n = 0; n < order; ++n) {
        Rat sign(n % 2 == 0 ? 1 : -1);
        r.add_mono(weight_of_z(n), weight_of_omega(n + m), Scalar(sign * Rat(binomial(m + n, n))));
    }
    return r;
}

KzwElem KzwElem::z_pow(int n) {
    KzwElem e;
    KzwTerm t;
    t.ze = n;
    e.add_term(t);
    return e;
}
KzwElem KzwElem::w_pow(int n) {
    KzwElem e;
    KzwTerm t;
    t.we = n;
    e.add_term(t);
    return e;
}
KzwElem KzwElem::omega_z(int m) {
    KzwElem e;
    KzwTerm t;
    t.tower = KzwTerm::OmZ;
    t.m = m;
    e.add_term(t);
    return e;
}
KzwElem KzwElem::omega_w(int m) {
    KzwElem e;
    KzwTerm t;
    t.tower = KzwTerm::OmW;
    t.m = m;
    e.add_term(t);
    return e;
}
KzwElem KzwElem::omega_zmw(int m) {
    KzwElem e;
    KzwTerm t;
    t.tower = KzwTerm::OmZW;
    t.m = m;
    e.add_term(t);
    return e;
}

void KzwElem::add_term(const KzwTerm& t) {
    if (t.coeff.is_zero()) return;
    terms_.push_back(t);
    normalize();
}

KzwElem& KzwElem::operator+=(const KzwElem& o) {
    for (const auto& t : o.terms_) terms_.push_back(t);
    normalize();
    return *this;
}

void KzwElem::normalize() {
    auto key = [](const KzwTerm& t) { return std::make_tuple(static_cast<int>(t.tower), t.m, t.m2, t.ze, t.we); };
    std::sort(terms_.begin(), terms_.end(), [&](const KzwTerm& a, const KzwTerm& b) { return key(a) < key(b); });
    std::vector<KzwTerm> out;
    for (const auto& t : terms_) {
        if (!out.empty() && key(out.back()) == key(t))
            out.back().coeff += t.coeff;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const KzwTerm& t) { return t.coeff.is_zero(); });
    terms_ = std::move(out);
}

namespace {
// z^a w^b * (single term), distributing z = (z-w) + w across the z-w tower.
void mul_deg0(int a, int b, const KzwTerm& t, const Scalar& c, std::vector<KzwTerm>& out) {
    switch (t.tower) {
    case KzwTerm::None: {
        KzwTerm r = t;
        r.ze += a;
        r.we += b;
        r.coeff = c * t.coeff;
        out.push_back(r);
        return;
    }
    case KzwTerm::OmZ: {
        if (a > t.m) return;
        KzwTerm r = t;
        r.m -= a;
        r.we += b;
        r.coeff = c * t.coeff;
        out.push_back(r);
        return;
    }
    case KzwTerm::OmW: {
        if (b > t.m) return;
        KzwTerm r = t;
        r.m -= b;
        r.ze += a;
        r.coeff = c * t.coeff;
        out.push_back(r);
        return;
    }
    case KzwTerm::OmZW: {
        for (int i = 0; i <= std::min(a, t.m); ++i) {
            KzwTerm r = t;
            r.m -= i;
            r.we += b + (a - i);
            r.coeff = Rat(binomial(a, i)) * (c * t.coeff);
            out.push_back(r);
        }
        return;
    }
    case KzwTerm::OmZOmW: {
        if (a > t.m || b > t.m2) return;
        KzwTerm r = t;
        r.m -= a;
        r.m2 -= b;
        r.coeff = c * t.coeff;
        out.push_back(r);
        return;
    }
    }
}
} // namespace

KzwElem operator*(const KzwElem& a, const KzwElem& b) {
    KzwElem result;
    std::vector<KzwTerm> acc;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            if (ta.tower == KzwTerm::None) {
                mul_deg0(ta.ze, ta.we, tb, ta.coeff, acc);
                continue;
            }
            if (tb.tower == KzwTerm::None) {
                mul_deg0(tb.ze, tb.we, ta, tb.coeff, acc);
                continue;
            }
            // tower * tower
            if (ta.tower == tb.tower) continue; // same tower squares to zero
            bool za = ta.tower == KzwTerm::OmZ, wa = ta.tower == KzwTerm::OmW;
            bool zb = tb.tower == KzwTerm::OmZ, wb = tb.tower == KzwTerm::OmW;
            if ((za && wb) || (wa && zb)) {
                const KzwTerm& tz = za ? ta : tb; // carries w^{we} * Omega^m_z
                const KzwTerm& tw = za ? tb : ta; // carries z^{ze} * Omega^m_w
                // fold each residual power into the opposite-variable tower
                if (tz.we > tw.m || tw.ze > tz.m) continue;
                KzwTerm r;
                r.tower = KzwTerm::OmZOmW;
                r.m = tz.m - tw.ze;
                r.m2 = tw.m - tz.we;
                r.coeff = ta.coeff * tb.coeff;
                if (wa && zb) r.coeff = -r.coeff; // reorder Omega_w Omega_z
                acc.push_back(r);
                continue;
            }
            throw math_error("product has no canonical form in the three-tower ring (degree-2 relation needed)");
        }
    for (const auto& t : acc) result.terms_.push_back(t);
    result.normalize();
    return result;
}

BiRav KzwElem::expand_small_w(int order) const {
    BiRav r(VarPair::Z_W, kExactOrder, order);
    for (const auto& t : terms_) {
        switch (t.tower) {
        case KzwTerm::None:
            r.add_mono(weight_of_z(t.ze), weight_of_z(t.we), t.coeff);
            break;
        case KzwTerm::OmZ:
            r.add_mono(weight_of_omega(t.m), weight_of_z(t.we), t.coeff);
            break;
        case KzwTerm::OmW:
            r.add_mono(weight_of_z(t.ze), weight_of_omega(t.m), t.coeff);
            break;
        case KzwTerm::OmZOmW:
            r.add_mono(weight_of_omega(t.m), weight_of_omega(t.m2), t.coeff);
            break;
        case KzwTerm::OmZW:
            for (int n = 0; n + t.we < order; ++n)
                r.add_mono(weight_of_omega(n + t.m), weight_of_z(n + t.we), Rat(binomial(t.m + n, n)) * t.coeff);
            break;
        }
    }
    return r;
}

BiRav KzwElem::expand_small_z(int order) const {
    BiRav r(VarPair::Z_W, order, kExactOrder);
    for (const auto& t : terms_) {
        switch (t.tower) {
        case KzwTerm::None:
            r.add_mono(weight_of_z(t.ze), weight_of_z(t.we), t.coeff);
            break;
        case KzwTerm::OmZ:
            r.add_mono(weight_of_omega(t.m), weight_of_z(t.we), t.coeff);
            break;
        case KzwTerm::OmW:
            r.add_mono(weight_of_z(t.ze), weight_of_omega(t.m), t.coeff);
            break;
        case KzwTerm::OmZOmW:
            r.add_mono(weight_of_omega(t.m), weight_of_omega(t.m2), t.coeff);
            break;
        case KzwTerm::OmZW: {
            Rat sign(t.m % 2 == 0 ? 1 : -1);
            for (int n = 0; n < order; ++n) {
                if (n + t.m - t.we < 0) continue; // w-power overshoots the tower
                r.add_mono(weight_of_z(n), weight_of_omega(n + t.m - t.we), sign * Rat(binomial(t.m + n, n)) * t.coeff);
            }
            break;
        }
        }
    }
    return r;
}

} // namespace rav
