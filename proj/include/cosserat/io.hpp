#pragma once

#include <filesystem>

#include <json.hpp>

#include "cosserat/defects.hpp"
#include "cosserat/material.hpp"

namespace cosserat::io {

using json = nlohmann::json;

/// FNV-1a 64-bit checksum of a byte range / file, as a hex string.
std::string fnv1a_hex(const std::string& bytes);
std::string file_checksum(const std::filesystem::path& path);

/// Fixed CSV schema: header "cell-type,i,j,k,c1,c2,c3,c4,c5,c6"; one row per
/// cell (or per vertex and slot for sampled forms), numbers at full
/// precision.
void write_displacement_csv(const std::filesystem::path& path, const DisplacementField& d);
void write_strain_csv(const std::filesystem::path& path, const StrainState& e);
void write_stress_csv(const std::filesystem::path& path, const StressState& s);
void write_defect_csv(const std::filesystem::path& path, const DefectDensity& j);
void write_motor_cochain_csv(const std::filesystem::path& path, const Cochain<Motor>& c);

DisplacementField read_displacement_csv(const std::filesystem::path& path, const BodyGrid& g);

/// Legacy VTK ASCII STRUCTURED_POINTS with one scalar field per component.
void write_vtk(const std::filesystem::path& path, const BodyGrid& g,
               const std::vector<std::pair<std::string, const GridField<double>*>>& fields);

void write_strain_vtk(const std::filesystem::path& path, const StrainState& e);
void write_defect_vtk(const std::filesystem::path& path, const DefectDensity& j);
void write_displacement_vtk(const std::filesystem::path& path, const DisplacementField& d);
void write_stress_vtk(const std::filesystem::path& path, const StressState& s);

/// Material files: {"class": "...", named constants...}. Unknown keys are
/// rejected.
std::pair<MaterialConstants, SymmetryClass> material_from_json(const json& j);
std::pair<MaterialConstants, SymmetryClass> load_material(const std::filesystem::path& path);

json parse_json_file(const std::filesystem::path& path);

}  // namespace cosserat::io
