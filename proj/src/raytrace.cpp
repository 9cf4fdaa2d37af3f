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

#include "reflector60/raytrace.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace reflector60
{
    bool RayPath::uses_panel() const
    {
        return std::find(reflectors.begin(), reflectors.end(), panel_reflector) != reflectors.end();
    }

    void Environment::validate() const
    {
        layout.validate();
        if (panel)
        {
            if (!(panel->width > 0.0))
                throw std::invalid_argument("Panel width must be positive.");
            if (!layout.contains(panel->endpoint_a, 1e-9) || !layout.contains(panel->endpoint_b, 1e-9))
                throw std::invalid_argument("Panel must lie inside the corridor footprint.");
        }
    }

    Segment reflector_segment(const Environment &env, int id)
    {
        if (id == panel_reflector)
        {
            if (!env.panel)
                throw std::invalid_argument("Environment has no panel.");
            return env.panel->segment();
        }
        if (id < 0 || static_cast<std::size_t>(id) >= env.layout.walls.size())
            throw std::out_of_range("Reflector id out of range.");
        return env.layout.walls[static_cast<std::size_t>(id)].segment();
    }

    double grazing_angle(const Point2 &from, const Point2 &at, const Segment &reflector)
    {
        const Vec2 ray = at - from;
        const Vec2 d = reflector.direction();
        double c = std::abs(dot(ray, d)) / (ray.norm() * d.norm());
        return std::acos(std::clamp(c, 0.0, 1.0));
    }

    namespace
    {
        void require_inside(const Point2 &p, const Environment &env, const char *what)
        {
            if (!env.layout.contains(p))
            {
                std::ostringstream msg;
                msg << what << " (" << p.x << ", " << p.y << ") is outside the corridor footprint.";
                throw outside_footprint_error(msg.str());
            }
        }

        // True if the leg u-v meets a wall anywhere except near its own endpoints
        bool leg_obstructed(const Point2 &u, const Point2 &v, const CorridorLayout &layout, double tol)
        {
            const Segment leg{u, v};
            for (const auto &wall : layout.walls)
            {
                auto hit = segment_intersection(leg, wall.segment());
                switch (hit.kind)
                {
                case SegmentIntersection::Kind::none:
                    break;
                case SegmentIntersection::Kind::overlap:
                    return true;
                case SegmentIntersection::Kind::point:
                    if (distance(hit.point, u) > tol && distance(hit.point, v) > tol)
                        return true;
                    break;
                }
            }
            return false;
        }

        // Sign of the side the panel's reflecting face looks at (away from the corner O)
        double panel_front_sign(const ReflectorPanel &panel)
        {
            return signed_distance(Point2{0.0, 0.0}, panel.segment()) > 0.0 ? -1.0 : 1.0;
        }

        struct Reflector
        {
            int id;
            Segment seg;
            std::string material;
            double front_sign; // 0 for two-sided walls
        };

        std::vector<Reflector> collect_reflectors(const Environment &env)
        {
            std::vector<Reflector> out;
            for (std::size_t i = 0; i < env.layout.walls.size(); ++i)
            {
                const auto &w = env.layout.walls[i];
                out.push_back({static_cast<int>(i), w.segment(), w.material, 0.0});
            }
            if (env.panel)
                out.push_back({panel_reflector, env.panel->segment(), env.panel->material, panel_front_sign(*env.panel)});
            return out;
        }

        // Image-method construction for one reflector sequence; nullopt if invalid
        std::optional<RayPath> trace_sequence(const Point2 &tx, const Point2 &rx,
                                              const std::vector<const Reflector *> &seq,
                                              const Environment &env, const TraceOptions &opt)
        {
            const std::size_t k = seq.size();

            // Successive images of the transmitter
            std::vector<Point2> images(k + 1);
            images[0] = tx;
            for (std::size_t j = 0; j < k; ++j)
                images[j + 1] = mirror_point(images[j], seq[j]->seg);

            // Backtrack from the receiver to find the bounce points
            std::vector<Point2> vertices(k + 2);
            vertices[0] = tx;
            vertices[k + 1] = rx;
            Point2 target = rx;
            for (std::size_t j = k; j-- > 0;)
            {
                const Segment &s = seq[j]->seg;
                const Vec2 r = target - images[j + 1];
                const Vec2 d = s.direction();
                const double denom = cross(r, d);
                if (denom == 0.0)
                    return std::nullopt;
                const Vec2 w = s.a - images[j + 1];
                const double u = cross(w, r) / denom; // position along the reflector
                const double len = d.norm();
                const double margin = opt.endpoint_tolerance / len;
                if (!(u > margin && u < 1.0 - margin))
                    return std::nullopt;
                const double t = cross(w, d) / denom; // position along image -> target
                if (!(t > 0.0 && t < 1.0))
                    return std::nullopt;
                vertices[j + 1] = s.a + d * u;
                target = vertices[j + 1];
            }

            // Neighbours of each bounce must sit strictly on the same (front) side
            for (std::size_t j = 0; j < k; ++j)
            {
                const Segment &s = seq[j]->seg;
                double sp = signed_distance(vertices[j], s);
                double sn = signed_distance(vertices[j + 2], s);
                if (std::abs(sp) <= opt.min_leg_length || std::abs(sn) <= opt.min_leg_length)
                    return std::nullopt;
                if ((sp > 0.0) != (sn > 0.0))
                    return std::nullopt;
                if (seq[j]->front_sign != 0.0 && sp * seq[j]->front_sign < 0.0)
                    return std::nullopt;
            }

            RayPath path;
            path.total_length = 0.0;
            for (std::size_t j = 0; j + 1 < vertices.size(); ++j)
            {
                double leg = distance(vertices[j], vertices[j + 1]);
                if (leg <= opt.min_leg_length)
                    return std::nullopt;
                if (leg_obstructed(vertices[j], vertices[j + 1], env.layout, opt.endpoint_tolerance))
                    return std::nullopt;
                path.total_length += leg;
            }

            path.vertices = std::move(vertices);
            for (const auto *r : seq)
            {
                path.reflectors.push_back(r->id);
                path.bounce_materials.push_back(r->material);
            }
            path.delay = path.total_length / speed_of_light;
            return path;
        }

        void recurse(const Point2 &tx, const Point2 &rx, const Environment &env, const TraceOptions &opt,
                     const std::vector<Reflector> &reflectors, int remaining,
                     std::vector<const Reflector *> &seq, std::vector<RayPath> &out)
        {
            if (!seq.empty())
                if (auto p = trace_sequence(tx, rx, seq, env, opt))
                    out.push_back(std::move(*p));
            if (remaining == 0)
                return;
            for (const auto &r : reflectors)
            {
                if (!seq.empty() && seq.back()->id == r.id)
                    continue;
                seq.push_back(&r);
                recurse(tx, rx, env, opt, reflectors, remaining - 1, seq, out);
                seq.pop_back();
            }
        }
    }

    bool los_blocked(const Point2 &tx, const Point2 &rx, const Environment &env)
    {
        require_inside(tx, env, "Tx");
        require_inside(rx, env, "Rx");
        if (tx == rx)
            return false;
        return leg_obstructed(tx, rx, env.layout, 1e-9);
    }

    std::vector<RayPath> enumerate_paths(const Point2 &tx, const Point2 &rx, const Environment &env,
                                         int max_order, const TraceOptions &opt)
    {
        if (max_order < 0 || max_order > 3)
            throw std::invalid_argument("max_order must be between 0 and 3.");
        require_inside(tx, env, "Tx");
        require_inside(rx, env, "Rx");

        std::vector<RayPath> paths;
        if (distance(tx, rx) > opt.min_leg_length && !leg_obstructed(tx, rx, env.layout, opt.endpoint_tolerance))
        {
            RayPath los;
            los.vertices = {tx, rx};
            los.total_length = distance(tx, rx);
            los.delay = los.total_length / speed_of_light;
            paths.push_back(std::move(los));
        }

        const auto reflectors = collect_reflectors(env);
        std::vector<const Reflector *> seq;
        recurse(tx, rx, env, opt, reflectors, max_order, seq, paths);

        // One path per reflector sequence
        std::set<std::vector<int>> seen;
        std::erase_if(paths, [&](const RayPath &p)
                      { return !seen.insert(p.reflectors).second; });

        std::stable_sort(paths.begin(), paths.end(), [](const RayPath &a, const RayPath &b)
                         {
                             if (a.delay != b.delay)
                                 return a.delay < b.delay;
                             return a.reflectors < b.reflectors; });
        return paths;
    }

    std::optional<RayPath> panel_path(const Point2 &tx, const Point2 &rx, const Environment &env,
                                      const TraceOptions &opt)
    {
        if (!env.panel)
            return std::nullopt;
        require_inside(tx, env, "Tx");
        require_inside(rx, env, "Rx");

        Reflector panel{panel_reflector, env.panel->segment(), env.panel->material, panel_front_sign(*env.panel)};
        std::vector<const Reflector *> seq{&panel};
        return trace_sequence(tx, rx, seq, env, opt);
    }
}
