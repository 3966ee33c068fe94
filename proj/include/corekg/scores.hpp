#pragma once

#include <cstdint>
#include <span>

namespace corekg {

enum class ModelKind : std::uint8_t { kComplEx = 0, kRotatE = 1 };

const char* model_kind_name(ModelKind kind);

// Gradient output views, one slot per real component of each input vector.
// The grad functions overwrite these; callers scale and accumulate.
struct ScoreGradView {
  std::span<double> d_w_re, d_w_im;
  std::span<double> d_s_re, d_s_im;
  std::span<double> d_o_re, d_o_im;
};

// ComplEx: -sum_i Re(w_i * s_i * conj(o_i)). Lower score = more plausible.
double score_complex(std::span<const double> w_re, std::span<const double> w_im,
                     std::span<const double> s_re, std::span<const double> s_im,
                     std::span<const double> o_re, std::span<const double> o_im);

double score_complex_grad(std::span<const double> w_re, std::span<const double> w_im,
                          std::span<const double> s_re, std::span<const double> s_im,
                          std::span<const double> o_re, std::span<const double> o_im,
                          const ScoreGradView& g);

// RotatE: sum_i |s_i * w_i - o_i| with |.| the complex modulus. Relation
// components are expected on the unit circle; gradients are taken with
// respect to the materialized (cos, sin) pair and callers fold them onto the
// phase angle. The modulus at an exact zero residual gets subgradient 0.
double score_rotate(std::span<const double> w_re, std::span<const double> w_im,
                    std::span<const double> s_re, std::span<const double> s_im,
                    std::span<const double> o_re, std::span<const double> o_im);

double score_rotate_grad(std::span<const double> w_re, std::span<const double> w_im,
                         std::span<const double> s_re, std::span<const double> s_im,
                         std::span<const double> o_re, std::span<const double> o_im,
                         const ScoreGradView& g);

double score_kind(ModelKind kind, std::span<const double> w_re, std::span<const double> w_im,
                  std::span<const double> s_re, std::span<const double> s_im,
                  std::span<const double> o_re, std::span<const double> o_im);

double score_kind_grad(ModelKind kind, std::span<const double> w_re,
                       std::span<const double> w_im, std::span<const double> s_re,
                       std::span<const double> s_im, std::span<const double> o_re,
                       std::span<const double> o_im, const ScoreGradView& g);

}  // namespace corekg
