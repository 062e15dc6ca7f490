#pragma once

#include <string>

#include "json.hpp"

#include "godel/algebra.hpp"
#include "godel/constructions.hpp"
#include "godel/dual.hpp"
#include "godel/error.hpp"
#include "godel/poset.hpp"

namespace godel {

using json = nlohmann::json;

// Formats:
//   poset      {"nodes":[...], "covers":[[lo,hi],...]}
//   forest     {"nodes":[...], "parent":{child: parentOrNull}}
//   algebra    {"type":"chain","n":k}
//            | {"type":"forest","nodes":[...],"parent":{...}}
//            | {"type":"table","elements":[...],"meet":[[..]],"join":[[..]],
//               "impl":[[..]],"bot":i,"top":j}
//   hom        {"map":{src:dst,...}}
//   structure  {"n":5,"sigma":"ggh3","points":[...],
//               "ops":[{"dom":[...],"map":{...}},...],"endo":{...}}
//   vformation {"A":alg,"B":alg,"C":alg,"fB":hom,"fC":hom}

json poset_to_json(const Poset& p);
Poset poset_from_json(const json& j);

json forest_to_json(const Forest& f);
Forest forest_from_json(const json& j);

json algebra_to_json(const GodelAlgebra& a);           // table form
GodelAlgebra algebra_from_json(const json& j);         // any of the three forms

json hom_to_json(const Homomorphism& h);
std::vector<int> hom_map_from_json(const json& j, const GodelAlgebra& src,
                                   const GodelAlgebra& tgt);

json structure_to_json(const DualStructure& x);
DualStructure structure_from_json(const json& j);

json vformation_to_json(const VFormation& v);
VFormation vformation_from_json(const json& j);

json certificate_to_json(const AmalgamCertificate& cert);

json error_to_json(const godel_error& e);

}  // namespace godel
