#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rangeshape {

// Integer lattice point. Dual-lattice vertices reuse Pt: dual (i,j) stands
// for the plane point (i+1/2, j+1/2).
struct Pt {
    int x = 0;
    int y = 0;

    friend bool operator==(Pt a, Pt b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Pt a, Pt b) { return !(a == b); }
    friend Pt operator+(Pt a, Pt b) { return {a.x + b.x, a.y + b.y}; }
    friend Pt operator-(Pt a, Pt b) { return {a.x - b.x, a.y - b.y}; }
    // lexicographic: first coordinate, then second
    friend bool operator<(Pt a, Pt b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }
};

inline int l1_norm(Pt p) { return std::abs(p.x) + std::abs(p.y); }
inline double l2_norm(Pt p) { return std::hypot(double(p.x), double(p.y)); }

inline const Pt kNeighborStep[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

struct PtHash {
    std::size_t operator()(Pt p) const {
        std::uint64_t v = (std::uint64_t(std::uint32_t(p.x)) << 32) | std::uint32_t(p.y);
        v ^= v >> 33;
        v *= 0xff51afd7ed558ccdULL;
        v ^= v >> 33;
        v *= 0xc4ceb9fe1a85ec53ULL;
        v ^= v >> 33;
        return std::size_t(v);
    }
};

// Undirected lattice edge in canonical form: base point plus axis
// (0: towards +x, 1: towards +y).
struct Edge {
    Pt a;
    int axis = 0;

    Pt other() const { return axis == 0 ? Pt{a.x + 1, a.y} : Pt{a.x, a.y + 1}; }
    friend bool operator==(const Edge& l, const Edge& r) { return l.a == r.a && l.axis == r.axis; }
    friend bool operator<(const Edge& l, const Edge& r) {
        if (l.a != r.a) return l.a < r.a;
        return l.axis < r.axis;
    }
};

inline Edge edge_between(Pt p, Pt q) {
    Pt d = q - p;
    if (std::abs(d.x) + std::abs(d.y) != 1) throw std::invalid_argument("edge_between: points not adjacent");
    if (d.x == -1 || d.y == -1) std::swap(p, q);
    return Edge{p, q.x - p.x != 0 ? 0 : 1};
}

// 64-bit key for hashing/counter RNG; zig-zag packs the coordinates.
inline std::uint64_t edge_key(const Edge& e) {
    auto zz = [](int v) -> std::uint64_t {
        return std::uint64_t((v << 1) ^ (v >> 31)) & 0x7fffffffULL;
    };
    return (zz(e.a.x) << 33) | (zz(e.a.y) << 2) | std::uint64_t(e.axis);
}

struct EdgeHash {
    std::size_t operator()(const Edge& e) const {
        std::uint64_t v = edge_key(e);
        v *= 0x9e3779b97f4a7c15ULL;
        v ^= v >> 29;
        return std::size_t(v);
    }
};

// Inclusive integer bounding box.
struct Box {
    int x0 = 0, y0 = 0, x1 = -1, y1 = -1;  // empty by default

    bool empty() const { return x1 < x0 || y1 < y0; }
    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }
    long long area() const { return empty() ? 0 : (long long)width() * height(); }
    bool contains(Pt p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
    void absorb(Pt p) {
        if (empty()) { x0 = x1 = p.x; y0 = y1 = p.y; return; }
        if (p.x < x0) x0 = p.x;
        if (p.x > x1) x1 = p.x;
        if (p.y < y0) y0 = p.y;
        if (p.y > y1) y1 = p.y;
    }
    Box expanded(int m) const { return Box{x0 - m, y0 - m, x1 + m, y1 + m}; }
    friend bool operator==(const Box& a, const Box& b) {
        return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
    }
};

// Real-valued plane point, for dual vertices, polygons and continuum work.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm1(Vec2 a) { return std::abs(a.x) + std::abs(a.y); }

inline Vec2 dual_to_plane(Pt d) { return {d.x + 0.5, d.y + 0.5}; }

}  // namespace rangeshape
