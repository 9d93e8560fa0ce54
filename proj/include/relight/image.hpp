#pragma once
// Image I/O and resizing on top of OpenCV. An image in this codebase is a
// (n, 3, H, W) float tensor in [0,1], RGB channel order; PNG files are 8-bit.

#include <filesystem>
#include <string>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "relight/common.hpp"
#include "relight/tensor.hpp"

namespace relight {

inline Tensor load_png(const std::filesystem::path& path) {
  cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  check_data(!bgr.empty(), "cannot read image: " + path.string());
  Tensor t(1, 3, bgr.rows, bgr.cols);
  const float k = 1.0f / 255.0f;
  for (int y = 0; y < bgr.rows; ++y) {
    const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      t.chan(0, 0)[y * t.w + x] = row[x][2] * k;
      t.chan(0, 1)[y * t.w + x] = row[x][1] * k;
      t.chan(0, 2)[y * t.w + x] = row[x][0] * k;
    }
  }
  return t;
}

inline void save_png(const std::filesystem::path& path, const Tensor& img,
                     int sample = 0) {
  check_run(img.c == 3 && sample < img.n, "save_png: need a (n,3,h,w) tensor");
  cv::Mat bgr(img.h, img.w, CV_8UC3);
  for (int y = 0; y < img.h; ++y) {
    cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < img.w; ++x) {
      for (int c = 0; c < 3; ++c) {
        const float v = img.chan(sample, c)[y * img.w + x];
        row[x][2 - c] =
            static_cast<unsigned char>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
      }
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  check_run(cv::imwrite(path.string(), bgr), "cannot write image: " + path.string());
}

// Bilinear resample of every sample/channel plane; no-op if already sized.
inline Tensor resize_bilinear(const Tensor& img, int out_h, int out_w) {
  if (img.h == out_h && img.w == out_w) return img;
  Tensor out(img.n, img.c, out_h, out_w);
  for (int n = 0; n < img.n; ++n) {
    for (int c = 0; c < img.c; ++c) {
      const cv::Mat src(img.h, img.w, CV_32FC1,
                        const_cast<float*>(img.chan(n, c)));
      cv::Mat dst(out_h, out_w, CV_32FC1, out.chan(n, c));
      cv::resize(src, dst, dst.size(), 0, 0, cv::INTER_LINEAR);
    }
  }
  return out;
}

// Tile a row-major grid of same-sized images (rows x cols) into one image
// with a 2px separator. Used by the trainer's image logs and the CLI strip.
inline Tensor make_grid(const std::vector<std::vector<Tensor>>& rows) {
  check_run(!rows.empty() && !rows[0].empty(), "make_grid: empty grid");
  const int h = rows[0][0].h, w = rows[0][0].w;
  const int ncols = static_cast<int>(rows[0].size());
  const int nrows = static_cast<int>(rows.size());
  const int sep = 2;
  Tensor out(1, 3, nrows * h + (nrows - 1) * sep, ncols * w + (ncols - 1) * sep);
  out.fill(1.0f);
  for (int r = 0; r < nrows; ++r) {
    check_run(static_cast<int>(rows[r].size()) == ncols,
              "make_grid: ragged rows");
    for (int cidx = 0; cidx < ncols; ++cidx) {
      const Tensor& cell = rows[r][cidx];
      check_run(cell.c == 3 && cell.h == h && cell.w == w,
                "make_grid: mismatched cell shape");
      const int oy = r * (h + sep), ox = cidx * (w + sep);
      for (int c = 0; c < 3; ++c) {
        for (int y = 0; y < h; ++y) {
          std::copy(cell.chan(0, c) + y * w, cell.chan(0, c) + (y + 1) * w,
                    out.chan(0, c) + (oy + y) * out.w + ox);
        }
      }
    }
  }
  return out;
}

// Nearest-neighbor integer upscale (envmap previews).
inline Tensor upscale_nearest(const Tensor& img, int factor) {
  Tensor out(img.n, img.c, img.h * factor, img.w * factor);
  for (int n = 0; n < img.n; ++n) {
    for (int c = 0; c < img.c; ++c) {
      const float* src = img.chan(n, c);
      float* dst = out.chan(n, c);
      for (int y = 0; y < out.h; ++y) {
        for (int x = 0; x < out.w; ++x) {
          dst[y * out.w + x] = src[(y / factor) * img.w + (x / factor)];
        }
      }
    }
  }
  return out;
}

}  // namespace relight
