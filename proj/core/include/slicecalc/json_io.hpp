// JSON forms of the core objects.  Mackey functors are serialized in a
// normalized basis (torsion coordinates first, then free ones) so that
// dump-parse-dump round-trips are byte identical.

#ifndef SLICECALC_JSON_IO_HPP
#define SLICECALC_JSON_IO_HPP

#include "slicecalc/cells.hpp"
#include "slicecalc/mackey.hpp"
#include "slicecalc/reps.hpp"

#include <nlohmann/json.hpp>

namespace slicecalc {

nlohmann::ordered_json mackey_to_json(const MackeyFunctor& m);
MackeyFunctor mackey_from_json(const nlohmann::json& j);

nlohmann::ordered_json rep_to_json(const RealRep& v);
RealRep rep_from_json(const nlohmann::json& j);

// Debug dump of a complex: terms plus differential matrices.
nlohmann::ordered_json complex_to_json(const MackeyComplex& c);

} // namespace slicecalc

#endif
