#include "corekg/scores.hpp"

#include <cmath>
#include <stdexcept>

namespace corekg {
namespace {

void check_dims(std::span<const double> w_re, std::span<const double> w_im,
                std::span<const double> s_re, std::span<const double> s_im,
                std::span<const double> o_re, std::span<const double> o_im) {
  std::size_t d = w_re.size();
  if (w_im.size() != d || s_re.size() != d || s_im.size() != d || o_re.size() != d ||
      o_im.size() != d)
    throw std::invalid_argument("score: dimension mismatch");
}

}  // namespace

const char* model_kind_name(ModelKind kind) {
  return kind == ModelKind::kComplEx ? "complex" : "rotate";
}

double score_complex(std::span<const double> w_re, std::span<const double> w_im,
                     std::span<const double> s_re, std::span<const double> s_im,
                     std::span<const double> o_re, std::span<const double> o_im) {
  check_dims(w_re, w_im, s_re, s_im, o_re, o_im);
  double acc = 0.0;
  for (std::size_t i = 0; i < w_re.size(); ++i) {
    double a = w_re[i], b = w_im[i];
    double c = s_re[i], d = s_im[i];
    double e = o_re[i], f = o_im[i];
    acc += (a * c - b * d) * e + (a * d + b * c) * f;
  }
  return -acc;
}

double score_complex_grad(std::span<const double> w_re, std::span<const double> w_im,
                          std::span<const double> s_re, std::span<const double> s_im,
                          std::span<const double> o_re, std::span<const double> o_im,
                          const ScoreGradView& g) {
  check_dims(w_re, w_im, s_re, s_im, o_re, o_im);
  double acc = 0.0;
  for (std::size_t i = 0; i < w_re.size(); ++i) {
    double a = w_re[i], b = w_im[i];
    double c = s_re[i], d = s_im[i];
    double e = o_re[i], f = o_im[i];
    acc += (a * c - b * d) * e + (a * d + b * c) * f;
    g.d_w_re[i] = -(c * e + d * f);
    g.d_w_im[i] = d * e - c * f;
    g.d_s_re[i] = -(a * e + b * f);
    g.d_s_im[i] = b * e - a * f;
    g.d_o_re[i] = -(a * c - b * d);
    g.d_o_im[i] = -(a * d + b * c);
  }
  return -acc;
}

double score_rotate(std::span<const double> w_re, std::span<const double> w_im,
                    std::span<const double> s_re, std::span<const double> s_im,
                    std::span<const double> o_re, std::span<const double> o_im) {
  check_dims(w_re, w_im, s_re, s_im, o_re, o_im);
  double acc = 0.0;
  for (std::size_t i = 0; i < w_re.size(); ++i) {
    double a = w_re[i], b = w_im[i];
    double c = s_re[i], d = s_im[i];
    double ur = c * a - d * b - o_re[i];
    double ui = c * b + d * a - o_im[i];
    acc += std::sqrt(ur * ur + ui * ui);
  }
  return acc;
}

double score_rotate_grad(std::span<const double> w_re, std::span<const double> w_im,
                         std::span<const double> s_re, std::span<const double> s_im,
                         std::span<const double> o_re, std::span<const double> o_im,
                         const ScoreGradView& g) {
  check_dims(w_re, w_im, s_re, s_im, o_re, o_im);
  double acc = 0.0;
  for (std::size_t i = 0; i < w_re.size(); ++i) {
    double a = w_re[i], b = w_im[i];
    double c = s_re[i], d = s_im[i];
    double ur = c * a - d * b - o_re[i];
    double ui = c * b + d * a - o_im[i];
    double m = std::sqrt(ur * ur + ui * ui);
    acc += m;
    double gur = 0.0, gui = 0.0;
    if (m > 0.0) {
      gur = ur / m;
      gui = ui / m;
    }
    g.d_w_re[i] = gur * c + gui * d;
    g.d_w_im[i] = -gur * d + gui * c;
    g.d_s_re[i] = gur * a + gui * b;
    g.d_s_im[i] = -gur * b + gui * a;
    g.d_o_re[i] = -gur;
    g.d_o_im[i] = -gui;
  }
  return acc;
}

double score_kind(ModelKind kind, std::span<const double> w_re, std::span<const double> w_im,
                  std::span<const double> s_re, std::span<const double> s_im,
                  std::span<const double> o_re, std::span<const double> o_im) {
  return kind == ModelKind::kComplEx ? score_complex(w_re, w_im, s_re, s_im, o_re, o_im)
                                     : score_rotate(w_re, w_im, s_re, s_im, o_re, o_im);
}

double score_kind_grad(ModelKind kind, std::span<const double> w_re,
                       std::span<const double> w_im, std::span<const double> s_re,
                       std::span<const double> s_im, std::span<const double> o_re,
                       std::span<const double> o_im, const ScoreGradView& g) {
  return kind == ModelKind::kComplEx
             ? score_complex_grad(w_re, w_im, s_re, s_im, o_re, o_im, g)
             : score_rotate_grad(w_re, w_im, s_re, s_im, o_re, o_im, g);
}

}  // namespace corekg
