// SPDX-License-Identifier: Apache-2.0
//
// reflector60 - 60 GHz corridor coverage planning with a passive metal reflector
// Copyright (C) 2026 The reflector60 authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef REFLECTOR60_GEOMETRY_HPP
#define REFLECTOR60_GEOMETRY_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflector60
{
    // ----- Primitive types -------------------------------------------------

    // Direction or displacement in the horizontal plane (meters)
    struct Vec2
    {
        double x = 0.0;
        double y = 0.0;

        double norm() const { return std::hypot(x, y); }
        Vec2 normalized() const;
        Vec2 operator*(double s) const { return {x * s, y * s}; }
        Vec2 operator-() const { return {-x, -y}; }
        Vec2 operator+(const Vec2 &o) const { return {x + o.x, y + o.y}; }
        Vec2 operator-(const Vec2 &o) const { return {x - o.x, y - o.y}; }
        bool operator==(const Vec2 &) const = default;
    };

    inline double dot(const Vec2 &a, const Vec2 &b) { return a.x * b.x + a.y * b.y; }
    inline double cross(const Vec2 &a, const Vec2 &b) { return a.x * b.y - a.y * b.x; }

    // Location in the corridor frame xOy (meters). The origin is the outer corner
    // of the L, Ox runs along part A and Oy along part B.
    struct Point2
    {
        double x = 0.0;
        double y = 0.0;

        Vec2 operator-(const Point2 &o) const { return {x - o.x, y - o.y}; }
        Point2 operator+(const Vec2 &v) const { return {x + v.x, y + v.y}; }
        Point2 operator-(const Vec2 &v) const { return {x - v.x, y - v.y}; }
        bool operator==(const Point2 &) const = default;
        bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }
    };

    inline double distance(const Point2 &a, const Point2 &b) { return (b - a).norm(); }
    inline Point2 midpoint(const Point2 &a, const Point2 &b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

    inline constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
    inline constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

    // Plain segment, no material attached
    struct Segment
    {
        Point2 a;
        Point2 b;

        Vec2 direction() const { return b - a; }
        double length() const { return distance(a, b); }
    };

    struct WallSegment
    {
        Point2 a;
        Point2 b;
        std::string material;
        std::string name; // optional label, e.g. "inner_b"

        Segment segment() const { return {a, b}; }
    };

    // ----- Errors ----------------------------------------------------------

    // A denominator of the orientation equation vanished or went negative
    class degenerate_geometry_error : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    class no_root_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class ambiguous_root_error : public std::runtime_error
    {
    public:
        ambiguous_root_error(const std::string &what, std::vector<double> roots_rad)
            : std::runtime_error(what), roots(std::move(roots_rad)) {}
        std::vector<double> roots; // all roots found (radians)
    };

    class outside_footprint_error : public std::out_of_range
    {
    public:
        using std::out_of_range::out_of_range;
    };

    // ----- Corridor layout -------------------------------------------------

    // L-shaped corridor. Part A occupies x in [0, L_R], y in [0, l_R];
    // part B occupies x in [0, l_T], y in [0, L_T + l_R].
    struct CorridorLayout
    {
        double tx_corridor_length = 2.75; // L_T
        double rx_corridor_length = 3.69; // L_R
        double tx_corridor_width = 1.62;  // l_T, part B
        double rx_corridor_width = 2.0;   // l_R, part A
        std::vector<WallSegment> walls;

        // Builds the six outer walls of the L from the four dimensions.
        // Throws std::invalid_argument for non-positive lengths or l_T >= L_R.
        static CorridorLayout from_dimensions(double L_T, double L_R, double l_T, double l_R,
                                              const std::string &wall_material = "plasterboard");

        // The measured IETR corridor, with the part B inner wall glazed
        static CorridorLayout measured_default();

        double total_tx_extent() const { return tx_corridor_length + rx_corridor_width; } // L_T + l_R

        // Inclusive of the boundary, with a small tolerance
        bool contains(const Point2 &p, double tol = 1e-9) const;

        // Throws std::invalid_argument if dimensions or walls are inconsistent
        void validate() const;
    };

    // Names of the generated walls, in generation order
    inline constexpr const char *wall_outer_a = "outer_a"; // y = 0
    inline constexpr const char *wall_outer_b = "outer_b"; // x = 0
    inline constexpr const char *wall_end_a = "end_a";     // x = L_R
    inline constexpr const char *wall_end_b = "end_b";     // y = L_T + l_R
    inline constexpr const char *wall_inner_b = "inner_b"; // x = l_T
    inline constexpr const char *wall_inner_a = "inner_a"; // y = l_R

    // ----- Reflector panel -------------------------------------------------

    // Flat metal plate standing in the outer corner, endpoint A on Ox and
    // endpoint B on Oy. alpha is the angle between the plate and Ox.
    struct ReflectorPanel
    {
        double width = 0.595;     // horizontal extent a (meters)
        Point2 endpoint_a;        // (a cos alpha, 0)
        Point2 endpoint_b;        // (0, a sin alpha)
        Point2 center;            // M
        double alpha = 0.0;       // radians
        std::string material = "metal";

        Segment segment() const { return {endpoint_a, endpoint_b}; }
    };

    struct AngleSolution
    {
        double alpha = 0.0; // panel angle to Ox
        double beta = 0.0;  // Rx horn tilt toward M
        double gamma = 0.0; // angle between Tx16-M and the part B axis
        ReflectorPanel panel;
        double residual = 0.0; // orientation_residual(alpha), radians
    };

    // ----- Orientation solver ----------------------------------------------

    // Left-hand side of 2a + atan(...) - atan(...) = pi/2, minus pi/2.
    // Throws degenerate_geometry_error if either denominator is <= 0 or the
    // result is not finite.
    double orientation_residual(double alpha, const CorridorLayout &layout, double width);

    // d(orientation_residual)/d(alpha), analytic
    double orientation_residual_derivative(double alpha, const CorridorLayout &layout, double width);

    // tan(beta) and tan(gamma) from the right triangles through M, R and T
    double beta_from_alpha(double alpha, const CorridorLayout &layout, double width);
    double gamma_from_alpha(double alpha, const CorridorLayout &layout, double width);

    struct SolverOptions
    {
        double scan_step = deg2rad(1.0);
        double tolerance = 1e-10;
        int max_iterations = 200;
    };

    // Brackets every sign change of the residual on a 1 degree grid over
    // [0, 90] degrees, then refines with safeguarded Newton / bisection.
    // Throws no_root_error or ambiguous_root_error (carrying every root).
    AngleSolution solve_reflector_orientation(const CorridorLayout &layout, double width,
                                              const SolverOptions &options = {});

    ReflectorPanel panel_from_alpha(double alpha, double width);

    // ----- Planar primitives -----------------------------------------------

    // Reflection of p across the supporting line of the segment
    Point2 mirror_point(const Point2 &p, const Segment &line);
    inline Point2 mirror_point(const Point2 &p, const WallSegment &wall) { return mirror_point(p, wall.segment()); }

    // Reflects a direction vector across the direction of a line
    Vec2 mirror_direction(const Vec2 &v, const Vec2 &line_direction);

    // Signed distance from p to the supporting line (positive on the left of a->b)
    double signed_distance(const Point2 &p, const Segment &line);

    struct SegmentIntersection
    {
        enum class Kind
        {
            none,    // disjoint or parallel
            point,   // unique intersection (crossing or touching)
            overlap  // collinear with a shared stretch
        };
        Kind kind = Kind::none;
        Point2 point; // valid for Kind::point; first shared point for Kind::overlap

        explicit operator bool() const { return kind != Kind::none; }
    };

    SegmentIntersection segment_intersection(const Segment &s1, const Segment &s2, double tol = 1e-12);
}

#endif
