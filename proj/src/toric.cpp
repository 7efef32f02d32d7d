#include "logsyn/toric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace logsyn::toric {

long long cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
long long dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

Vec2 primitive(Vec2 v) {
    if (v.x == 0 && v.y == 0) throw std::invalid_argument("primitive: zero vector");
    long long g = std::gcd(std::abs(v.x), std::abs(v.y));
    return Vec2{v.x / g, v.y / g};
}

Cone2 Cone2::zero() { return Cone2{}; }

Cone2 Cone2::ray(Vec2 v) {
    Cone2 c;
    c.gens_ = {primitive(v)};
    return c;
}

Cone2 Cone2::span(Vec2 a, Vec2 b) {
    Vec2 pa = primitive(a), pb = primitive(b);
    if (cross(pa, pb) == 0)
        throw std::invalid_argument("Cone2::span: generators are dependent");
    Cone2 c;
    c.gens_ = {pa, pb};
    std::sort(c.gens_.begin(), c.gens_.end());
    return c;
}

bool Cone2::contains(Vec2 p) const {
    switch (gens_.size()) {
        case 0:
            return p == Vec2{0, 0};
        case 1:
            return cross(gens_[0], p) == 0 && dot(gens_[0], p) >= 0;
        default: {
            // p = a g1 + b g2 with a, b >= 0, decided by signed areas
            long long d = cross(gens_[0], gens_[1]);
            long long a = cross(p, gens_[1]);
            long long b = cross(gens_[0], p);
            if (d < 0) {
                d = -d;
                a = -a;
                b = -b;
            }
            return a >= 0 && b >= 0;
        }
    }
    return false;
}

bool Cone2::contains(const Cone2& c) const {
    return std::all_of(c.gens_.begin(), c.gens_.end(),
                       [&](Vec2 g) { return contains(g); });
}

bool Cone2::is_smooth() const {
    if (gens_.size() < 2) return true;
    return std::abs(cross(gens_[0], gens_[1])) == 1;
}

std::vector<Cone2> Cone2::faces() const {
    std::vector<Cone2> out{zero()};
    for (Vec2 g : gens_) out.push_back(ray(g));
    if (gens_.size() == 2) out.push_back(*this);
    return out;
}

bool Cone2::is_face_of(const Cone2& c) const {
    auto fs = c.faces();
    return std::find(fs.begin(), fs.end(), *this) != fs.end();
}

std::string Cone2::to_string() const {
    std::ostringstream os;
    os << "Cone(";
    for (size_t t = 0; t < gens_.size(); ++t)
        os << (t ? "," : "") << "(" << gens_[t].x << "," << gens_[t].y << ")";
    os << ")";
    return os.str();
}

Cone2 intersect(const Cone2& a, const Cone2& b) {
    // in rank 2 every extreme ray of the intersection is a generator of a
    // inside b or vice versa
    std::vector<Vec2> cand;
    for (Vec2 g : a.generators())
        if (b.contains(g)) cand.push_back(g);
    for (Vec2 g : b.generators())
        if (a.contains(g)) cand.push_back(g);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    if (cand.empty()) return Cone2::zero();
    if (cand.size() == 1) return Cone2::ray(cand[0]);
    for (size_t s = 0; s < cand.size(); ++s)
        for (size_t t = 0; t < cand.size(); ++t) {
            if (s == t || cross(cand[s], cand[t]) == 0) continue;
            Cone2 c = Cone2::span(cand[s], cand[t]);
            bool all_in = std::all_of(cand.begin(), cand.end(),
                                      [&](Vec2 g) { return c.contains(g); });
            if (all_in && a.contains(c) && b.contains(c)) return c;
        }
    return Cone2::ray(cand[0]);  // candidates collinear
}

std::vector<Vec2> Fan2::rays() const {
    std::vector<Vec2> out;
    for (const Cone2& c : maximal)
        for (Vec2 g : c.generators()) out.push_back(g);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Fan2::has_ray(Vec2 v) const {
    Vec2 pv = primitive(v);
    auto rs = rays();
    return std::find(rs.begin(), rs.end(), pv) != rs.end();
}

bool fan_validate(const Fan2& f) {
    for (size_t s = 0; s < f.maximal.size(); ++s)
        for (size_t t = s + 1; t < f.maximal.size(); ++t) {
            Cone2 common = intersect(f.maximal[s], f.maximal[t]);
            if (!common.is_face_of(f.maximal[s]) || !common.is_face_of(f.maximal[t]))
                return false;
        }
    for (Vec2 r : f.marked_rays)
        if (!f.has_ray(r)) return false;
    return true;
}

namespace {

// counterclockwise order inside one strongly convex cone
void sort_ccw(std::vector<Vec2>& rays) {
    std::sort(rays.begin(), rays.end(),
              [](Vec2 a, Vec2 b) { return cross(a, b) > 0; });
}

bool covers_cone(const Fan2& fine, const Cone2& big) {
    // collect fine rays inside big, sweep the sectors
    std::vector<Vec2> rays;
    for (Vec2 r : fine.rays())
        if (big.contains(r)) rays.push_back(r);
    Vec2 g1 = big.generators()[0], g2 = big.generators()[1];
    if (cross(g1, g2) < 0) std::swap(g1, g2);
    if (std::find(rays.begin(), rays.end(), g1) == rays.end()) return false;
    if (std::find(rays.begin(), rays.end(), g2) == rays.end()) return false;
    sort_ccw(rays);
    if (rays.front() != g1 || rays.back() != g2) return false;
    for (size_t t = 0; t + 1 < rays.size(); ++t) {
        if (cross(rays[t], rays[t + 1]) <= 0) return false;
        Cone2 sector = Cone2::span(rays[t], rays[t + 1]);
        if (std::find(fine.maximal.begin(), fine.maximal.end(), sector) ==
            fine.maximal.end())
            return false;
    }
    return true;
}

}  // namespace

bool is_dividing_cover(const Fan2& fine, const Fan2& coarse) {
    if (!fan_validate(fine) || !fan_validate(coarse)) return false;
    for (const Cone2& cf : fine.maximal) {
        bool inside = std::any_of(coarse.maximal.begin(), coarse.maximal.end(),
                                  [&](const Cone2& cc) { return cc.contains(cf); });
        if (!inside) return false;
    }
    for (const Cone2& cc : coarse.maximal) {
        if (cc.dim() == 0) continue;
        if (cc.dim() == 1) {
            bool covered = std::any_of(fine.maximal.begin(), fine.maximal.end(),
                                       [&](const Cone2& c) { return c.contains(cc); });
            if (!covered) return false;
            continue;
        }
        if (!covers_cone(fine, cc)) return false;
    }
    return true;
}

std::optional<Cone2> cone_union(const Cone2& a, const Cone2& b) {
    std::vector<Vec2> cand;
    for (Vec2 g : a.generators()) cand.push_back(g);
    for (Vec2 g : b.generators()) cand.push_back(g);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (size_t s = 0; s < cand.size(); ++s)
        for (size_t t = s + 1; t < cand.size(); ++t) {
            if (cross(cand[s], cand[t]) == 0) continue;
            Cone2 u = Cone2::span(cand[s], cand[t]);
            if (!u.contains(a) || !u.contains(b)) continue;
            Fan2 pieces{{a, b}, {}};
            if (fan_validate(pieces) && covers_cone(pieces, u)) return u;
        }
    return std::nullopt;
}

std::vector<Vec2> dual_hilbert_basis(const Cone2& c) {
    if (c.dim() != 2) throw std::invalid_argument("dual_hilbert_basis: need a 2D cone");
    Vec2 g1 = c.generators()[0], g2 = c.generators()[1];
    auto inward_normal = [](Vec2 boundary, Vec2 interior_side) {
        Vec2 n{-boundary.y, boundary.x};
        if (dot(n, interior_side) < 0) n = Vec2{boundary.y, -boundary.x};
        return primitive(n);
    };
    Vec2 d1 = inward_normal(g1, g2), d2 = inward_normal(g2, g1);
    long long bound = std::abs(d1.x) + std::abs(d2.x) + std::abs(d1.y) + std::abs(d2.y);
    std::vector<Vec2> cand;
    for (long long x = -bound; x <= bound; ++x)
        for (long long y = -bound; y <= bound; ++y) {
            Vec2 w{x, y};
            if (w == Vec2{0, 0}) continue;
            if (dot(w, g1) < 0 || dot(w, g2) < 0) continue;
            // inside the fundamental parallelotope of (d1, d2)
            long long det = cross(d1, d2);
            long long alpha = cross(w, d2), beta = cross(d1, w);
            if (det < 0) {
                det = -det;
                alpha = -alpha;
                beta = -beta;
            }
            if (alpha < 0 || beta < 0 || alpha > det || beta > det) continue;
            cand.push_back(w);
        }
    std::vector<Vec2> basis;
    for (Vec2 w : cand) {
        bool reducible = false;
        for (Vec2 u : cand)
            for (Vec2 v : cand)
                if (u.x + v.x == w.x && u.y + v.y == w.y) reducible = true;
        if (!reducible) basis.push_back(w);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

namespace {

const Vec2 kE1{1, 0};
const Vec2 kE2{0, 1};

Fan2 axes_fine_fan(Vec2 v) {
    Cone2 sigma = Cone2::span(kE1, kE2);
    Cone2 tau = Cone2::span(kE1, Vec2{1, -1});
    Cone2 tau_prime = Cone2::span(kE2, Vec2{-1, 1});
    Fan2 f{{sigma, tau, tau_prime}, {kE1, kE2, primitive(v)}};
    if (!f.has_ray(v)) f.maximal.push_back(Cone2::ray(v));
    return f;
}

}  // namespace

Report verify_axes_proof() { return verify_axes_proof(Vec2{-1, 1}); }

Report verify_axes_proof(Vec2 v) {
    Report rep;
    Cone2 sigma = Cone2::span(kE1, kE2);
    Cone2 tau = Cone2::span(kE1, Vec2{1, -1});
    Cone2 tau_prime = Cone2::span(kE2, Vec2{-1, 1});
    Fan2 full{{sigma, tau, tau_prime}, {kE1, kE2}};

    rep.add("(1) fan <sigma,tau,tau'> with markings [e1]+[e2] is valid", fan_validate(full));

    Cone2 st = intersect(sigma, tau_prime);
    rep.add("(2) sigma cap tau' = Cone(e2)", st == Cone2::ray(kE2), st.to_string());

    // first square pair: subfans <sigma,tau> and <tau'> cover the full fan and
    // meet in <Cone(e2)>
    Fan2 left{{sigma, tau}, {kE1, kE2}};
    Fan2 right{{tau_prime}, {kE2}};
    bool squares1 = fan_validate(left) && fan_validate(right);
    {
        std::set<Cone2> union_cones(left.maximal.begin(), left.maximal.end());
        union_cones.insert(right.maximal.begin(), right.maximal.end());
        squares1 = squares1 && union_cones == std::set<Cone2>(full.maximal.begin(),
                                                              full.maximal.end());
        std::set<Cone2> faces_left, faces_right;
        for (const Cone2& c : left.maximal)
            for (const Cone2& f : c.faces()) faces_left.insert(f);
        for (const Cone2& c : right.maximal)
            for (const Cone2& f : c.faces()) faces_right.insert(f);
        std::set<Cone2> common;
        std::set_intersection(faces_left.begin(), faces_left.end(), faces_right.begin(),
                              faces_right.end(), std::inserter(common, common.begin()));
        std::set<Cone2> expect{Cone2::zero(), Cone2::ray(kE2)};
        squares1 = squares1 && common == expect;
    }
    rep.add("(3) first square pair: cover by <sigma,tau> and <tau'> meeting in <Cone(e2)>",
            squares1);

    auto u_st = cone_union(sigma, tau);
    bool item4 = u_st && *u_st == Cone2::span(kE2, Vec2{1, -1}) && u_st->is_smooth();
    rep.add("(4) sigma cup tau = Cone(e2, e1-e2), smooth",
            item4, u_st ? u_st->to_string() : "no common cone");

    Fan2 fine = axes_fine_fan(v);
    bool item5 = fan_validate(fine) && fan_validate(Fan2{{tau_prime}, {kE2, v}});
    rep.add("(5) second square pair: markings [e1]+[e2]+[v] live on valid fans", item5);

    auto u_stp = cone_union(sigma, tau_prime);
    bool item6 = u_stp && *u_stp == Cone2::span(kE1, Vec2{-1, 1}) && u_stp->is_smooth();
    rep.add("(6) sigma cup tau' = Cone(e1, e2-e1), smooth",
            item6, u_stp ? u_stp->to_string() : "no common cone");

    bool item7 = false;
    if (u_stp) {
        Fan2 coarse{{*u_stp, tau}, {kE1, v}};
        item7 = is_dividing_cover(fine, coarse);
    }
    rep.add("(7) <sigma,tau,tau'> -> <sigma cup tau', tau> is a dividing cover", item7);

    auto hb = dual_hilbert_basis(sigma);
    bool item8 = hb == std::vector<Vec2>{Vec2{0, 1}, Vec2{1, 0}};
    // the summation chart N^2 -> N dualizes to e1* + e2*, so the pullback of
    // the log parameter is the product of the two chart coordinates: the
    // fiber over the log point is k[x,y]/(xy) with log structure Nx + Ny
    Vec2 sum_dual{1, 1};
    item8 = item8 && hb.size() == 2 &&
            Vec2{hb[0].x + hb[1].x, hb[0].y + hb[1].y} == sum_dual;
    item8 = item8 && full.marked_rays.size() == 2 && full.has_ray(kE1) && full.has_ray(kE2);
    rep.add("(8) chart of T_<sigma> x_{A_N} pt_N is (k[x,y]/(xy), Nx+Ny)", item8);
    return rep;
}

AxesTable axes_table(long long p, long long i, int N) {
    if (i < 0) throw std::invalid_argument("axes_table: i must be >= 0");
    AxesTable out;
    out.p = p;
    out.i = i;
    out.precision = N;
    prismatic::ModelParams params{p, 1, true, N};

    std::array<std::vector<int>, 5> want;
    std::array<std::vector<std::string>, 5> desc;
    auto add_form = [&](long long index, int shift) {
        if (index < 0) return;
        syntomic::ClosedForm cf = syntomic::closed_form(1, index);
        auto expanded = syntomic::expand_closed_form(cf, p, N);
        for (int d = 0; d < 3; ++d)
            want[d + shift].insert(want[d + shift].end(), expanded[d].begin(),
                                   expanded[d].end());
        for (const syntomic::Summand& s : cf.summands) {
            if (s.kind == syntomic::SummandKind::witt_ring)
                desc[s.degree + shift].push_back("W");
            else if (s.m >= 1)
                desc[s.degree + shift].push_back("bW_" + std::to_string(s.m));
        }
    };
    add_form(i, 0);
    add_form(i - 1, 2);

    std::array<padic::FinPModule, 5> got;
    for (int d = 0; d < 5; ++d) got[d] = padic::FinPModule{p, N, {}};
    auto add_syn = [&](long long index, int shift) {
        if (index < 0) return;
        auto r = syntomic::syntomic_total(params, index,
                                          syntomic::default_orbit_bound(p, 1, index));
        for (int d = 0; d < 3; ++d)
            got[d + shift].exponents.insert(got[d + shift].exponents.end(),
                                            r.h[d].exponents.begin(), r.h[d].exponents.end());
    };
    add_syn(i, 0);
    add_syn(i - 1, 2);

    out.pass = true;
    for (int d = 0; d < 5; ++d) {
        std::sort(want[d].begin(), want[d].end());
        std::sort(got[d].exponents.begin(), got[d].exponents.end());
        out.h[d] = got[d];
        out.pass = out.pass && got[d].exponents == want[d];
        std::sort(desc[d].begin(), desc[d].end());
        std::ostringstream os;
        if (desc[d].empty()) os << "0";
        for (size_t t = 0; t < desc[d].size(); ++t) os << (t ? " + " : "") << desc[d][t];
        out.descriptor[d] = os.str();
    }
    return out;
}

namespace {

long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int t = 0; t < e; ++t) r *= b;
    return r;
}

}  // namespace

Report perfection_check(long long p, int denom_bound, long long height_bound) {
    if (denom_bound < 1 || denom_bound > 6 || height_bound < 1 || height_bound > 50)
        throw std::invalid_argument("perfection_check: bounds out of range");
    Report rep;
    const long long q = pow_ll(p, denom_bound);  // common denominator p^K
    const long long top = height_bound * q;      // largest numerator

    // raw generators (a, b) in N[1/p]^2, value = num / q
    // pushout class key: (a + b, -a mod Z), the group pushout in normal form
    struct Key {
        long long s, t;
        bool operator<(const Key& o) const { return s != o.s ? s < o.s : t < o.t; }
        bool operator==(const Key& o) const { return s == o.s && t == o.t; }
    };
    auto key_of = [&](long long a, long long b) {
        return Key{a + b, (q - a % q) % q};
    };

    std::map<Key, std::vector<std::pair<long long, long long>>> classes;
    for (long long a = 0; a <= top; ++a)
        for (long long b = 0; b <= top; ++b) classes[key_of(a, b)].push_back({a, b});

    // two raw pairs share a key exactly when they differ by the pushout
    // relation (a, b) ~ (a + c, b - c) with integral c
    bool relations_ok = true;
    for (auto& [key, members] : classes) {
        for (size_t t = 1; t < members.size(); ++t) {
            long long da = members[t].first - members[0].first;
            long long db = members[t].second - members[0].second;
            if (da % q != 0 || da + db != 0) relations_ok = false;
        }
    }
    rep.add("pushout classes match the normal form (s, -a mod Z)", relations_ok);

    // membership of (s, t) in the image monoid: some a in [0, s] with
    // -a = t mod Z, i.e. s >= ((-t) mod Z); checked against the enumeration
    auto in_image = [&](long long s, long long t) { return s >= (q - t % q) % q; };
    bool image_matches = true;
    for (long long s = 0; s <= top && image_matches; ++s)
        for (long long t = 0; t < q; ++t)
            if ((classes.count(Key{s, t}) > 0) != in_image(s, t)) {
                image_matches = false;
                break;
            }
    rep.add("image membership matches the closed criterion", image_matches);

    // saturation: every truncated (s, t) has a multiple in the image, so the
    // saturated classes are exactly the truncation of N[1/p] + Z[1/p]/Z and
    // the canonical map is surjective onto it
    bool saturated = true;
    long long worst_multiplier = 1;
    for (long long s = 0; s <= top && saturated; ++s)
        for (long long t = 0; t < q; ++t) {
            long long lambda = 1;
            bool ok = false;
            for (; lambda <= q; ++lambda)
                if (in_image(lambda * s, lambda * t % q)) {
                    ok = true;
                    break;
                }
            if (!ok) {
                saturated = false;
                break;
            }
            worst_multiplier = std::max(worst_multiplier, lambda);
        }
    rep.add("saturation surjects onto the truncation of N[1/p] + Z[1/p]/Z", saturated,
            "largest multiplier " + std::to_string(worst_multiplier));

    // injectivity: distinct classes have distinct normal forms
    std::set<Key> seen;
    bool injective = true;
    for (auto& [key, members] : classes) injective = injective && seen.insert(key).second;
    rep.add("canonical map injective on classes", injective);

    // additivity of the key map whenever the sum stays within bounds
    bool additive = true;
    for (long long a1 = 0; a1 <= top && additive; a1 += 3)
        for (long long b1 = 0; b1 <= top && additive; b1 += 5)
            for (long long a2 = 0; a2 + a1 <= top && additive; a2 += 7)
                for (long long b2 = 0; b2 + b1 <= top; b2 += 11) {
                    Key lhs = key_of(a1 + a2, b1 + b2);
                    Key sum{key_of(a1, b1).s + key_of(a2, b2).s,
                            (key_of(a1, b1).t + key_of(a2, b2).t) % q};
                    if (!(lhs == sum)) {
                        additive = false;
                        break;
                    }
                }
    rep.add("addition of classes matches addition of normal forms", additive);

    // the element (1/p, 0): image (1/p, -1/p mod Z)
    Key ex = key_of(q / p, 0);
    bool example_ok = ex.s == q / p && ex.t == q - q / p;
    rep.add("(1/p, 0) maps to (1/p, -1/p mod Z)", example_ok);
    return rep;
}

}  // namespace logsyn::toric
