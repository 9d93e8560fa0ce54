#pragma once
// Procedural desk-scale stand-in dataset: a handful of axis-aligned boxes and
// spheres on a ground plane, viewed top-down orthographically, lit by a
// directional compass light with Lambertian shading and hard ray-cast
// shadows, tinted by the blackbody color of the light temperature.
//
// World frame: x east, y north, z up; the visible square is [-0.5, 0.5]^2.
// Image row 0 is the north edge. A light from direction deg (N=0, clockwise)
// arrives from compass heading deg at a fixed 35 degree elevation, so its
// unit vector toward the light is (sin(deg)*cos(el), cos(deg)*cos(el),
// sin(el)) in (x, y, z).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "relight/color.hpp"
#include "relight/common.hpp"
#include "relight/illumination.hpp"
#include "relight/image.hpp"
#include "relight/rng.hpp"
#include "relight/tensor.hpp"

namespace relight {

struct ToyObject {
  enum class Kind { box, sphere } kind = Kind::box;
  double cx = 0, cy = 0;      // center on the ground plane
  double hx = 0.1, hy = 0.1;  // box half extents
  double height = 0.15;       // box height
  double radius = 0.08;       // sphere radius (rests on the ground)
  Rgb albedo{0.7, 0.7, 0.7};
};

struct SceneSpec {
  std::vector<ToyObject> objects;  // 2..5
  Rgb ground_albedo{0.5, 0.5, 0.5};
};

struct RenderOptions {
  bool shadows = true;
};

inline constexpr double kLightElevationDeg = 35.0;
inline constexpr double kAmbient = 0.25;
inline constexpr double kDiffuse = 0.75;

inline SceneSpec sample_scene(Rng& rng) {
  SceneSpec scene;
  const double g = rng.uniform(0.3, 0.8);
  scene.ground_albedo = {g + rng.uniform(-0.05, 0.05),
                         g + rng.uniform(-0.05, 0.05),
                         g + rng.uniform(-0.05, 0.05)};
  const int n = 2 + static_cast<int>(rng.index(4));
  for (int i = 0; i < n; ++i) {
    ToyObject obj;
    obj.kind = rng.uniform() < 0.5 ? ToyObject::Kind::box : ToyObject::Kind::sphere;
    obj.cx = rng.uniform(-0.35, 0.35);
    obj.cy = rng.uniform(-0.35, 0.35);
    obj.hx = rng.uniform(0.04, 0.12);
    obj.hy = rng.uniform(0.04, 0.12);
    obj.height = rng.uniform(0.08, 0.25);
    obj.radius = rng.uniform(0.05, 0.12);
    obj.albedo = {rng.uniform(0.25, 0.95), rng.uniform(0.25, 0.95),
                  rng.uniform(0.25, 0.95)};
    scene.objects.push_back(obj);
  }
  return scene;
}

namespace toy_detail {

struct Surface {
  double z = 0;                 // height of the visible surface
  double nx = 0, ny = 0, nz = 1;
  const ToyObject* obj = nullptr;  // null: ground
};

// Top surface height of an object at (x, y), or negative if not covering.
inline double top_height(const ToyObject& o, double x, double y) {
  if (o.kind == ToyObject::Kind::box) {
    if (std::abs(x - o.cx) <= o.hx && std::abs(y - o.cy) <= o.hy)
      return o.height;
    return -1;
  }
  const double dx = x - o.cx, dy = y - o.cy;
  const double d2 = dx * dx + dy * dy;
  if (d2 > o.radius * o.radius) return -1;
  // sphere center sits at z = radius
  return o.radius + std::sqrt(o.radius * o.radius - d2);
}

inline Surface surface_at(const SceneSpec& scene, double x, double y) {
  Surface s;
  for (const auto& o : scene.objects) {
    const double z = top_height(o, x, y);
    if (z > s.z) {
      s.z = z;
      s.obj = &o;
      if (o.kind == ToyObject::Kind::box) {
        s.nx = 0;
        s.ny = 0;
        s.nz = 1;
      } else {
        s.nx = (x - o.cx) / o.radius;
        s.ny = (y - o.cy) / o.radius;
        s.nz = (z - o.radius) / o.radius;
      }
    }
  }
  return s;
}

// Does the ray p + t*l (t > eps) hit the object?
inline bool ray_hits(const ToyObject& o, double px, double py, double pz,
                     double lx, double ly, double lz) {
  constexpr double eps = 1e-6;
  if (o.kind == ToyObject::Kind::sphere) {
    const double ox = px - o.cx, oy = py - o.cy, oz = pz - o.radius;
    const double b = ox * lx + oy * ly + oz * lz;
    const double c = ox * ox + oy * oy + oz * oz - o.radius * o.radius;
    const double disc = b * b - c;  // |l| = 1
    if (disc < 0) return false;
    const double t = -b - std::sqrt(disc);
    return t > eps;
  }
  // slab test against the box [cx-hx, cx+hx] x [cy-hy, cy+hy] x [0, height]
  double t0 = eps, t1 = 1e18;
  const double lo[3] = {o.cx - o.hx, o.cy - o.hy, 0.0};
  const double hi[3] = {o.cx + o.hx, o.cy + o.hy, o.height};
  const double org[3] = {px, py, pz};
  const double dir[3] = {lx, ly, lz};
  for (int a = 0; a < 3; ++a) {
    if (std::abs(dir[a]) < 1e-12) {
      if (org[a] < lo[a] || org[a] > hi[a]) return false;
      continue;
    }
    double ta = (lo[a] - org[a]) / dir[a];
    double tb = (hi[a] - org[a]) / dir[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

inline bool occluded(const SceneSpec& scene, const Surface& at, double px,
                     double py, double pz, double lx, double ly, double lz) {
  for (const auto& o : scene.objects) {
    if (&o == at.obj && o.kind == ToyObject::Kind::sphere) continue;  // convex
    if (ray_hits(o, px, py, pz, lx, ly, lz)) return true;
  }
  return false;
}

}  // namespace toy_detail

inline Tensor render_scene(const SceneSpec& scene, const Illumination& illum,
                           int image_size, const RenderOptions& opts = {}) {
  check_usage(illum.valid(), "render_scene: invalid illumination");
  check_usage(image_size >= 16, "render_scene: image too small");
  const double el = kLightElevationDeg * kPi / 180.0;
  const double az = illum.direction_deg * kPi / 180.0;
  const double lx = std::sin(az) * std::cos(el);
  const double ly = std::cos(az) * std::cos(el);
  const double lz = std::sin(el);

  const Rgb neutral = kelvin_to_rgb(6500);
  const Rgb light = kelvin_to_rgb(illum.temperature_k);
  const double tint[3] = {light.r / neutral.r, light.g / neutral.g,
                          light.b / neutral.b};

  Tensor img(1, 3, image_size, image_size);
  for (int py = 0; py < image_size; ++py) {
    const double wy = 0.5 - (py + 0.5) / image_size;  // row 0 = north
    for (int px = 0; px < image_size; ++px) {
      const double wx = (px + 0.5) / image_size - 0.5;
      const toy_detail::Surface s = toy_detail::surface_at(scene, wx, wy);
      double diffuse = std::max(0.0, s.nx * lx + s.ny * ly + s.nz * lz);
      if (opts.shadows && diffuse > 0 &&
          toy_detail::occluded(scene, s, wx, wy, s.z, lx, ly, lz)) {
        diffuse = 0;
      }
      const double shade = kAmbient + kDiffuse * diffuse;
      const Rgb& alb = s.obj ? s.obj->albedo : scene.ground_albedo;
      const double rgb[3] = {alb.r * shade, alb.g * shade, alb.b * shade};
      for (int c = 0; c < 3; ++c) {
        img.chan(0, c)[py * image_size + px] = static_cast<float>(
            std::clamp(rgb[c] * tint[c], 0.0, 1.0));
      }
    }
  }
  return img;
}

// Renders n_scenes procedurally sampled scenes under all 40 illuminations and
// writes <out_dir>/scene_<k>/<direction>_<kelvin>.png plus manifest.csv.
// Returns the manifest path. Fully deterministic in the seed.
inline std::filesystem::path generate_toy_dataset(
    const std::filesystem::path& out_dir, int n_scenes, int image_size,
    std::uint64_t seed) {
  check_usage(n_scenes >= 2, "restricted pairing needs >= 2 scenes");
  check_usage(image_size >= 64, "generate_toy_dataset: image_size >= 64");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  check_run(std::filesystem::is_directory(out_dir),
            "cannot create output directory: " + out_dir.string());

  const Rng base(seed);
  const std::filesystem::path manifest_path = out_dir / "manifest.csv";
  std::ofstream manifest(manifest_path);
  check_run(manifest.good(), "cannot write " + manifest_path.string());
  manifest << "scene_id,direction,temperature,relpath\n";

  for (int k = 0; k < n_scenes; ++k) {
    Rng scene_rng = base.fork(k);
    const SceneSpec scene = sample_scene(scene_rng);
    const std::string scene_id = "scene_" + std::to_string(k);
    for (int dir : kDirectionsDeg) {
      const std::string dir_name = direction_name(dir);
      for (int kelvin : kTemperaturesK) {
        const Illumination illum{dir, kelvin};
        const Tensor img = render_scene(scene, illum, image_size);
        const std::string rel =
            scene_id + "/" + dir_name + "_" + std::to_string(kelvin) + ".png";
        save_png(out_dir / rel, img);
        manifest << scene_id << "," << dir_name << "," << kelvin << "," << rel
                 << "\n";
      }
    }
  }
  manifest.close();
  check_run(manifest.good(), "failed writing " + manifest_path.string());
  return manifest_path;
}

}  // namespace relight
