#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "logsyn/report.hpp"
#include "logsyn/syntomic.hpp"

namespace logsyn::toric {

struct Vec2 {
    long long x = 0, y = 0;
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
    bool operator<(const Vec2& o) const { return x != o.x ? x < o.x : y < o.y; }
};

long long cross(Vec2 a, Vec2 b);
long long dot(Vec2 a, Vec2 b);
Vec2 primitive(Vec2 v);  // divide by gcd; requires v != 0

// Strongly convex rational cone in Z^2 with 0, 1 or 2 primitive generators
// (2 generators are linearly independent). Generators are kept in lexicographic
// order so equality is structural.
class Cone2 {
public:
    static Cone2 zero();
    static Cone2 ray(Vec2 v);
    static Cone2 span(Vec2 a, Vec2 b);  // throws if dependent

    int dim() const { return static_cast<int>(gens_.size()); }
    const std::vector<Vec2>& generators() const { return gens_; }

    bool contains(Vec2 p) const;
    bool contains(const Cone2& c) const;
    bool is_smooth() const;  // |det| of generators is 1 (dim <= 1 is smooth)
    std::vector<Cone2> faces() const;  // includes the cone itself
    bool is_face_of(const Cone2& c) const;

    bool operator==(const Cone2& o) const { return gens_ == o.gens_; }
    bool operator!=(const Cone2& o) const { return !(*this == o); }
    bool operator<(const Cone2& o) const { return gens_ < o.gens_; }

    std::string to_string() const;

private:
    std::vector<Vec2> gens_;
};

Cone2 intersect(const Cone2& a, const Cone2& b);

// The smallest 2D cone containing both, if it is strongly convex and equals
// the set union a cup b (the cones must tile it).
std::optional<Cone2> cone_union(const Cone2& a, const Cone2& b);

struct Fan2 {
    std::vector<Cone2> maximal;
    std::vector<Vec2> marked_rays;  // Deligne-Faltings markings

    std::vector<Vec2> rays() const;  // all rays of the fan, deduplicated
    bool has_ray(Vec2 v) const;
};

// Pairwise intersections are common faces and marked rays are rays of the fan.
bool fan_validate(const Fan2& f);

// fine refines coarse with equal support: every maximal cone of fine sits in
// a cone of coarse, and each maximal cone of coarse is exactly tiled by
// angular sectors of fine (1D cones of coarse must appear in fine).
bool is_dividing_cover(const Fan2& fine, const Fan2& coarse);

// Hilbert basis of the dual cone of a full-dimensional cone.
std::vector<Vec2> dual_hilbert_basis(const Cone2& c);

// Scripted checklist for the fan-level steps behind the coordinate-axes
// splitting; dividing_ray perturbs the extra marked ray (default -e1+e2) for
// the negative control.
Report verify_axes_proof();
Report verify_axes_proof(Vec2 dividing_ray);

struct AxesTable {
    long long p = 2, i = 0;
    int precision = 2;
    std::array<padic::FinPModule, 5> h;           // degrees 0..4
    std::array<std::string, 5> descriptor;        // W / bW_m rendering per degree
    bool pass = false;                            // matches the closed-form expansion
};

// Right-hand side of the axes computation: syn(i) of the log point plus
// syn(i-1) shifted by two, assembled from orbit data and checked against the
// closed forms.
AxesTable axes_table(long long p, long long i, int N);

// Finite verification of the two-copy saturated pushout of N[1/p] over N:
// its classes biject with N[1/p] + Z[1/p]/Z additively on the truncation
// {denominator <= p^K, height <= B}.
Report perfection_check(long long p, int denom_bound, long long height_bound);

}  // namespace logsyn::toric
