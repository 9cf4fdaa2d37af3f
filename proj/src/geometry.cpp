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

#include "reflector60/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace reflector60
{
    Vec2 Vec2::normalized() const
    {
        double n = norm();
        if (n == 0.0)
            throw std::domain_error("Cannot normalize a zero-length vector.");
        return {x / n, y / n};
    }

    // ----- Layout ----------------------------------------------------------

    CorridorLayout CorridorLayout::from_dimensions(double L_T, double L_R, double l_T, double l_R,
                                                   const std::string &wall_material)
    {
        CorridorLayout layout;
        layout.tx_corridor_length = L_T;
        layout.rx_corridor_length = L_R;
        layout.tx_corridor_width = l_T;
        layout.rx_corridor_width = l_R;

        if (!(L_T > 0.0 && L_R > 0.0 && l_T > 0.0 && l_R > 0.0) ||
            !std::isfinite(L_T) || !std::isfinite(L_R) || !std::isfinite(l_T) || !std::isfinite(l_R))
            throw std::invalid_argument("Corridor dimensions must be finite and positive.");
        if (l_T >= L_R)
            throw std::invalid_argument("Part B width l_T must be smaller than the part A length L_R.");

        const double top = L_T + l_R;
        layout.walls = {
            {{0.0, 0.0}, {L_R, 0.0}, wall_material, wall_outer_a},
            {{0.0, 0.0}, {0.0, top}, wall_material, wall_outer_b},
            {{L_R, 0.0}, {L_R, l_R}, wall_material, wall_end_a},
            {{0.0, top}, {l_T, top}, wall_material, wall_end_b},
            {{l_T, l_R}, {l_T, top}, wall_material, wall_inner_b},
            {{l_T, l_R}, {L_R, l_R}, wall_material, wall_inner_a},
        };
        return layout;
    }

    CorridorLayout CorridorLayout::measured_default()
    {
        auto layout = from_dimensions(2.75, 3.69, 1.62, 2.0, "plasterboard");
        for (auto &w : layout.walls)
            if (w.name == wall_inner_b)
                w.material = "glass";
        return layout;
    }

    bool CorridorLayout::contains(const Point2 &p, double tol) const
    {
        if (!p.is_finite())
            return false;
        bool in_a = p.x >= -tol && p.x <= rx_corridor_length + tol &&
                    p.y >= -tol && p.y <= rx_corridor_width + tol;
        bool in_b = p.x >= -tol && p.x <= tx_corridor_width + tol &&
                    p.y >= -tol && p.y <= total_tx_extent() + tol;
        return in_a || in_b;
    }

    void CorridorLayout::validate() const
    {
        for (double v : {tx_corridor_length, rx_corridor_length, tx_corridor_width, rx_corridor_width})
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument("Corridor dimensions must be finite and positive.");
        if (tx_corridor_width >= rx_corridor_length)
            throw std::invalid_argument("Part B width l_T must be smaller than the part A length L_R.");
        if (walls.empty())
            throw std::invalid_argument("Corridor layout has no walls.");
        for (const auto &w : walls)
        {
            if (!w.a.is_finite() || !w.b.is_finite())
                throw std::invalid_argument("Wall endpoints must be finite.");
            if (w.a == w.b)
                throw std::invalid_argument("Wall '" + w.name + "' has coincident endpoints.");
            if (w.material.empty())
                throw std::invalid_argument("Wall '" + w.name + "' has no material.");
        }
    }

    // ----- Orientation equation --------------------------------------------

    namespace
    {
        struct OrientationTerms
        {
            double n1, d1; // beta triangle: opposite, adjacent
            double n2, d2; // gamma triangle
        };

        OrientationTerms orientation_terms(double alpha, const CorridorLayout &layout, double width)
        {
            const double h = 0.5 * width;
            OrientationTerms t;
            t.n1 = 0.5 * layout.rx_corridor_width - h * std::sin(alpha);
            t.d1 = layout.rx_corridor_length - h * std::cos(alpha);
            t.n2 = 0.5 * layout.tx_corridor_width - h * std::cos(alpha);
            t.d2 = layout.total_tx_extent() - h * std::sin(alpha);
            if (!(t.d1 > 0.0) || !(t.d2 > 0.0))
            {
                std::ostringstream msg;
                msg << "Degenerate geometry at alpha = " << rad2deg(alpha)
                    << " deg: orientation denominators must be positive (got " << t.d1 << ", " << t.d2 << ").";
                throw degenerate_geometry_error(msg.str());
            }
            return t;
        }
    }

    double beta_from_alpha(double alpha, const CorridorLayout &layout, double width)
    {
        auto t = orientation_terms(alpha, layout, width);
        return std::atan(t.n1 / t.d1);
    }

    double gamma_from_alpha(double alpha, const CorridorLayout &layout, double width)
    {
        auto t = orientation_terms(alpha, layout, width);
        return std::atan(t.n2 / t.d2);
    }

    double orientation_residual(double alpha, const CorridorLayout &layout, double width)
    {
        auto t = orientation_terms(alpha, layout, width);
        double r = 2.0 * alpha + std::atan(t.n1 / t.d1) - std::atan(t.n2 / t.d2) - 0.5 * std::numbers::pi;
        if (!std::isfinite(r))
            throw degenerate_geometry_error("Orientation residual is not finite.");
        return r;
    }

    double orientation_residual_derivative(double alpha, const CorridorLayout &layout, double width)
    {
        auto t = orientation_terms(alpha, layout, width);
        const double h = 0.5 * width;
        const double s = std::sin(alpha), c = std::cos(alpha);

        // d/dx atan(n/d) = (n'd - nd') / (n^2 + d^2)
        double dn1 = -h * c, dd1 = h * s;
        double dn2 = h * s, dd2 = -h * c;
        double datan1 = (dn1 * t.d1 - t.n1 * dd1) / (t.n1 * t.n1 + t.d1 * t.d1);
        double datan2 = (dn2 * t.d2 - t.n2 * dd2) / (t.n2 * t.n2 + t.d2 * t.d2);
        return 2.0 + datan1 - datan2;
    }

    ReflectorPanel panel_from_alpha(double alpha, double width)
    {
        ReflectorPanel p;
        p.width = width;
        p.alpha = alpha;
        p.endpoint_a = {width * std::cos(alpha), 0.0};
        p.endpoint_b = {0.0, width * std::sin(alpha)};
        p.center = {0.5 * width * std::cos(alpha), 0.5 * width * std::sin(alpha)};
        return p;
    }

    namespace
    {
        // Root of the residual inside [lo, hi] where the residual changes sign
        double refine_root(double lo, double hi, double f_lo, const CorridorLayout &layout, double width,
                           const SolverOptions &opt)
        {
            double x = 0.5 * (lo + hi);
            for (int it = 0; it < opt.max_iterations; ++it)
            {
                double fx = orientation_residual(x, layout, width);
                if (fx == 0.0)
                    return x;

                // Shrink the bracket
                if ((fx < 0.0) == (f_lo < 0.0))
                    lo = x, f_lo = fx;
                else
                    hi = x;

                if (std::abs(fx) < 1e-3 * opt.tolerance || hi - lo < 1e-15)
                    return x;

                // Newton step, falling back to bisection when it leaves the bracket
                double df = orientation_residual_derivative(x, layout, width);
                double next = (df != 0.0) ? x - fx / df : lo - 1.0;
                if (!(next > lo && next < hi))
                    next = 0.5 * (lo + hi);
                x = next;
            }
            return x;
        }
    }

    AngleSolution solve_reflector_orientation(const CorridorLayout &layout, double width, const SolverOptions &opt)
    {
        if (!(width > 0.0) || !std::isfinite(width))
            throw std::invalid_argument("Panel width must be finite and positive.");
        if (!(opt.scan_step > 0.0))
            throw std::invalid_argument("Solver scan step must be positive.");

        const double upper = 0.5 * std::numbers::pi;
        const auto n_steps = static_cast<int>(std::ceil(upper / opt.scan_step - 1e-12));

        std::vector<double> roots;
        double x_prev = 0.0;
        double f_prev = orientation_residual(x_prev, layout, width);
        if (f_prev == 0.0)
            roots.push_back(x_prev);

        for (int k = 1; k <= n_steps; ++k)
        {
            double x = std::min(upper, k * opt.scan_step);
            double f = orientation_residual(x, layout, width);
            if (f == 0.0)
                roots.push_back(x);
            else if (f_prev != 0.0 && (f < 0.0) != (f_prev < 0.0))
                roots.push_back(refine_root(x_prev, x, f_prev, layout, width, opt));
            x_prev = x, f_prev = f;
        }

        // Roots on the closed interval ends are outside (0, pi/2)
        std::erase_if(roots, [&](double r)
                      { return r <= 0.0 || r >= upper; });

        if (roots.empty())
            throw no_root_error("Orientation equation has no root in (0, 90) degrees for this layout.");
        if (roots.size() > 1)
        {
            std::ostringstream msg;
            msg << "Orientation equation has " << roots.size() << " roots in (0, 90) degrees:";
            for (double r : roots)
                msg << " " << rad2deg(r);
            throw ambiguous_root_error(msg.str(), roots);
        }

        AngleSolution sol;
        sol.alpha = roots.front();
        sol.residual = orientation_residual(sol.alpha, layout, width);
        if (!(std::abs(sol.residual) < opt.tolerance))
            throw no_root_error("Orientation solver did not converge to the requested tolerance.");
        sol.beta = beta_from_alpha(sol.alpha, layout, width);
        sol.gamma = gamma_from_alpha(sol.alpha, layout, width);
        sol.panel = panel_from_alpha(sol.alpha, width);
        return sol;
    }

    // ----- Planar primitives -----------------------------------------------

    Point2 mirror_point(const Point2 &p, const Segment &line)
    {
        const Vec2 d = line.direction();
        const double dd = dot(d, d);
        if (dd == 0.0)
            throw std::invalid_argument("Mirror line endpoints must be distinct.");
        const Vec2 ap = p - line.a;
        const double t = dot(ap, d) / dd;
        const Point2 foot = line.a + d * t;
        return {2.0 * foot.x - p.x, 2.0 * foot.y - p.y};
    }

    Vec2 mirror_direction(const Vec2 &v, const Vec2 &line_direction)
    {
        const double dd = dot(line_direction, line_direction);
        const Vec2 along = line_direction * (dot(v, line_direction) / dd);
        return along * 2.0 - v;
    }

    double signed_distance(const Point2 &p, const Segment &line)
    {
        const Vec2 d = line.direction();
        return cross(d, p - line.a) / d.norm();
    }

    SegmentIntersection segment_intersection(const Segment &s1, const Segment &s2, double tol)
    {
        const Vec2 r = s1.direction();
        const Vec2 s = s2.direction();
        const Vec2 qp = s2.a - s1.a;
        const double denom = cross(r, s);
        const double scale = r.norm() * s.norm();

        SegmentIntersection out;
        if (std::abs(denom) <= tol * scale)
        {
            // Parallel: collinear only if s2.a lies on the line of s1
            const double rn = r.norm();
            if (rn == 0.0 || std::abs(cross(qp, r)) > tol * rn * std::max(1.0, qp.norm()))
                return out;

            const double rr = dot(r, r);
            double t0 = dot(qp, r) / rr;
            double t1 = dot(s2.b - s1.a, r) / rr;
            if (t0 > t1)
                std::swap(t0, t1);
            const double lo = std::max(0.0, t0), hi = std::min(1.0, t1);
            if (lo > hi + tol)
                return out;
            out.point = s1.a + r * lo;
            out.kind = (hi - lo > tol) ? SegmentIntersection::Kind::overlap : SegmentIntersection::Kind::point;
            return out;
        }

        const double t = cross(qp, s) / denom;
        const double u = cross(qp, r) / denom;
        if (t < -tol || t > 1.0 + tol || u < -tol || u > 1.0 + tol)
            return out;
        out.kind = SegmentIntersection::Kind::point;
        out.point = s1.a + r * std::clamp(t, 0.0, 1.0);
        return out;
    }
}
