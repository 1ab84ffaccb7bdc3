#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pwilab/common.hpp"
#include "pwilab/iet.hpp"
#include "pwilab/pwi.hpp"

namespace pwilab {

/// Shortest decimal that round-trips a double (17 significant digits).
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string orbit_csv(const OrbitRecord& rec) {
  std::ostringstream out;
  out << "n,re,im,atom,boundary_flag\n";
  // Only points with a resolved atom are rows; an escaped final point has
  // no atom symbol and is reported through escaped_at instead.
  for (std::size_t k = 0; k < rec.atom_trace.symbols.size(); ++k) {
    out << k << ',' << format_double(rec.points[k].real()) << ','
        << format_double(rec.points[k].imag()) << ','
        << rec.atom_trace.symbols[k] << ',' << (rec.boundary_flags[k] ? 1 : 0)
        << '\n';
  }
  return out.str();
}

inline void export_orbit(const OrbitRecord& rec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << orbit_csv(rec);
  if (!out) throw IoError("write failed: " + path);
}

inline OrbitRecord read_orbit_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  OrbitRecord rec;
  std::string line;
  if (!std::getline(in, line) || line != "n,re,im,atom,boundary_flag")
    throw IoError("bad orbit CSV header in " + path);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    std::getline(row, field, ',');
    const double re = std::stod(field);
    std::getline(row, field, ',');
    const double im = std::stod(field);
    std::getline(row, field, ',');
    const int atom = std::stoi(field);
    std::getline(row, field, ',');
    const bool flag = field == "1";
    rec.points.emplace_back(re, im);
    rec.atom_trace.symbols.push_back(atom);
    rec.boundary_flags.push_back(flag);
  }
  return rec;
}

// ---- JSON configs -------------------------------------------------------

inline nlohmann::json iet_to_json(const Iet& iet) {
  return {{"lengths", iet.lengths()}, {"perm", iet.perm().one_line()}};
}

inline Iet iet_from_json(const nlohmann::json& j) {
  return Iet(j.at("lengths").get<std::vector<double>>(),
             Permutation(j.at("perm").get<std::vector<int>>()));
}

inline std::string sense_name(Sense s) {
  switch (s) {
    case Sense::ge: return "ge";
    case Sense::gt: return "gt";
    case Sense::le: return "le";
    case Sense::lt: return "lt";
  }
  return "ge";
}

inline Sense sense_from_name(const std::string& s) {
  if (s == "ge") return Sense::ge;
  if (s == "gt") return Sense::gt;
  if (s == "le") return Sense::le;
  if (s == "lt") return Sense::lt;
  throw IoError("unknown sense: " + s);
}

inline nlohmann::json pwi_to_json(const Pwi& pwi) {
  nlohmann::json atoms = nlohmann::json::array();
  for (int i = 1; i <= pwi.atom_count(); ++i) {
    nlohmann::json halfplanes = nlohmann::json::array();
    for (const HalfPlane& h : pwi.atom(i).constraints())
      halfplanes.push_back({{"phi", h.phi},
                            {"anchor", {h.anchor.real(), h.anchor.imag()}},
                            {"sense", sense_name(h.sense)}});
    nlohmann::json special = nlohmann::json::array();
    for (Complex p : pwi.atom(i).special_points())
      special.push_back({p.real(), p.imag()});
    atoms.push_back(
        {{"halfplanes", halfplanes}, {"special_points", special}});
  }
  nlohmann::json maps = nlohmann::json::array();
  for (int i = 1; i <= pwi.atom_count(); ++i)
    maps.push_back(
        {{"theta", pwi.map(i).theta()},
         {"lambda", {pwi.map(i).lambda().real(), pwi.map(i).lambda().imag()}}});
  return {{"name", pwi.name()}, {"atoms", atoms}, {"maps", maps}};
}

inline Pwi pwi_from_json(const nlohmann::json& j) {
  std::vector<ConvexRegion> atoms;
  for (const auto& ja : j.at("atoms")) {
    std::vector<HalfPlane> hs;
    for (const auto& jh : ja.at("halfplanes"))
      hs.push_back(HalfPlane{
          jh.at("phi").get<double>(),
          Complex(jh.at("anchor")[0].get<double>(),
                  jh.at("anchor")[1].get<double>()),
          sense_from_name(jh.at("sense").get<std::string>())});
    std::vector<Complex> special;
    if (ja.contains("special_points"))
      for (const auto& jp : ja.at("special_points"))
        special.emplace_back(jp[0].get<double>(), jp[1].get<double>());
    atoms.emplace_back(std::move(hs), std::move(special));
  }
  std::vector<Isometry> maps;
  for (const auto& jm : j.at("maps"))
    maps.emplace_back(jm.at("theta").get<double>(),
                      Complex(jm.at("lambda")[0].get<double>(),
                              jm.at("lambda")[1].get<double>()));
  return Pwi(std::move(atoms), std::move(maps),
             j.value("name", std::string("pwi")));
}

}  // namespace pwilab
