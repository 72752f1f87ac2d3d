#pragma once

#include <json.hpp>

#include "cosserat/analytic.hpp"
#include "cosserat/defects.hpp"
#include "cosserat/material.hpp"
#include "cosserat/strain.hpp"

namespace cosserat::presets {

using json = nlohmann::json;

/// Reference material constants used by the verification suites: a solidly
/// positive definite isotropic set and its hemitropic extension.
MaterialConstants reference_isotropic();
MaterialConstants reference_hemitropic();

/// Named finite-strain configurations.
///   identity              y = x, Q = I
///   rigid                 y = R x + a                 (params: axis, angle, shift)
///   twist                 y = x, Q = rot_z(alpha x3)  (params: alpha)
///   wavy                  smooth non-rigid            (params: amplitude, seed)
Configuration configuration_preset(const BodyGrid& g, const std::string& name, const json& params);

/// Named infinitesimal displacement fields.
///   zero | rigid (params: a, b) | shear (u = (x2, 0, 0)) |
///   constant-rotation (params: c) | trig (params: seed, amplitude, max_freq)
DisplacementField displacement_preset(const BodyGrid& g, const std::string& name,
                                      const json& params);

/// Analytic displacement presets (closed-form derivatives), for
/// incompatibility oracles and manufactured solutions.
///   trig (params: seed, amplitude, max_freq)
AnalyticDisplacement analytic_preset(const std::string& name, const json& params);

/// Strain cochain presets for the circuit pipeline.
///   integrable (params: seed)        de Rham sample of a trig displacement strain
///   defect-line (params: i0, j0, mu) straight defect threading the grid
Cochain<Motor> strain_cochain_preset(const BodyGrid& g, const std::string& name,
                                     const json& params);

}  // namespace cosserat::presets
