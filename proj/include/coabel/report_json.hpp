#pragma once

#include "coabel/analyzer.hpp"

#include <sstream>
#include <string>

namespace coabel {

inline Json certificate_json(const Certificate& c) {
  Json j;
  j["claim"] = c.claim;
  j["justification"] = c.justification;
  j["data"] = c.data;
  return j;
}

inline Json finiteness_json(const Finiteness& f) {
  Json j;
  switch (f.kind) {
    case FinitenessKind::FInfinity: j["verdict"] = "F_infinity"; break;
    case FinitenessKind::NotFinitelyGenerated: j["verdict"] = "NotFinitelyGenerated"; break;
    case FinitenessKind::ExactType:
      j["verdict"] = "ExactType";
      j["m"] = f.m;
      break;
  }
  return j;
}

inline std::string finiteness_label(const Finiteness& f) {
  switch (f.kind) {
    case FinitenessKind::FInfinity: return "F_infinity";
    case FinitenessKind::NotFinitelyGenerated: return "not finitely generated";
    case FinitenessKind::ExactType:
      if (f.m == 1) return "finitely generated, not F_2";
      return "F_" + std::to_string(f.m) + " but not F_" + std::to_string(f.m + 1);
  }
  return "?";
}

inline std::string type_label(const Finiteness& f) {
  switch (f.kind) {
    case FinitenessKind::FInfinity: return "F_infinity";
    case FinitenessKind::NotFinitelyGenerated: return "NotFinitelyGenerated";
    case FinitenessKind::ExactType: return "ExactType(" + std::to_string(f.m) + ")";
  }
  return "?";
}

/// Field order is part of the format.
inline Json report_to_json(const AnalysisReport& rep) {
  Json j;
  j["effective_rank"] = rep.effective_rank;
  j["fullness"] = "Full";
  Json sub = Json::array();
  for (std::size_t i = 0; i < rep.subdirectness.size(); ++i) {
    Json e;
    e["factor"] = i + 1;
    e["status"] = to_string(rep.subdirectness[i].status);
    e["index"] = rep.subdirectness[i].index ? json_detail::int_to_json(*rep.subdirectness[i].index) : Json(nullptr);
    sub.push_back(std::move(e));
  }
  j["subdirectness"] = std::move(sub);
  j["max_deficient_size"] = rep.deficiency.max_size ? Json(*rep.deficiency.max_size) : Json(nullptr);
  Json wit = Json::array();
  for (const auto& w : rep.deficiency.witnesses) {
    Json e;
    e["subset"] = indices_json(indices_to_mask(w.subset));
    e["rank_of_blocks"] = w.rank_of_blocks;
    wit.push_back(std::move(e));
  }
  j["witnesses"] = std::move(wit);
  j["finiteness"] = finiteness_json(rep.finiteness);
  Json betti;
  if (rep.betti.value) {
    betti["verdict"] = "Value";
    betti["b1"] = *rep.betti.value;
  } else {
    betti["verdict"] = "UnknownByCriteria";
  }
  j["betti"] = std::move(betti);
  Json kahler;
  kahler["verdict"] = to_string(rep.kahler.status);
  if (rep.kahler.status == KahlerStatus::NotKahler) {
    Json reasons = Json::array();
    for (auto o : rep.kahler.reasons) reasons.push_back(to_string(o));
    kahler["reasons"] = std::move(reasons);
  }
  j["kahler"] = std::move(kahler);
  Json irr;
  irr["verdict"] = to_string(rep.irreducibility.status);
  if (rep.irreducibility.partition) irr["partition"] = split_json(*rep.irreducibility.partition);
  j["irreducibility"] = std::move(irr);
  Json certs = Json::array();
  for (const auto& c : rep.certificates) certs.push_back(certificate_json(c));
  j["certificates"] = std::move(certs);
  return j;
}

inline std::string render_text(const AnalysisReport& rep) {
  std::ostringstream out;
  out << "factors:            " << rep.factor_count << "\n";
  out << "target rank:        " << rep.target_rank << (rep.surjective_onto_target ? " (surjective)" : " (not surjective)")
      << "\n";
  out << "coabelian rank n':  " << rep.effective_rank << "\n";
  out << "full:               yes\n";
  out << "subdirectness:     ";
  for (std::size_t i = 0; i < rep.subdirectness.size(); ++i) {
    const auto& p = rep.subdirectness[i];
    out << " " << i + 1 << ":" << to_string(p.status);
    if (p.status == SubdirectStatus::FiniteIndex) out << "(" << to_decimal(*p.index) << ")";
  }
  out << "\n";
  out << "max deficient size: ";
  if (rep.deficiency.max_size) {
    out << *rep.deficiency.max_size;
    if (!rep.deficiency.witnesses.empty()) {
      out << "  witness {";
      const auto& s = rep.deficiency.witnesses.front().subset;
      for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i] + 1;
      out << "}";
    }
  } else {
    out << "none";
  }
  out << "\n";
  out << "finiteness:         " << finiteness_label(rep.finiteness) << "\n";
  out << "b1(ker):            " << (rep.betti.value ? std::to_string(*rep.betti.value) : "unknown by criteria") << "\n";
  out << "kahler:             " << to_string(rep.kahler.status);
  for (std::size_t i = 0; i < rep.kahler.reasons.size(); ++i)
    out << (i ? ", " : " (") << to_string(rep.kahler.reasons[i]);
  if (!rep.kahler.reasons.empty()) out << ")";
  out << "\n";
  out << "irreducibility:     " << to_string(rep.irreducibility.status);
  if (rep.irreducibility.partition) out << " " << split_json(*rep.irreducibility.partition).dump();
  out << "\n";
  if (rep.three_factor) out << "three-factor case:  " << to_string(rep.three_factor->label) << "\n";
  out << "\ncertificates:\n";
  for (const auto& c : rep.certificates) out << "  - " << c.claim << "\n      " << c.justification << "\n";
  return out.str();
}

}  // namespace coabel
