#pragma once

#include <json.hpp>
#include <string>

#include "xlab/golden_thompson.hpp"
#include "xlab/linalg.hpp"
#include "xlab/martingale.hpp"
#include "xlab/matrix_fn.hpp"
#include "xlab/tail.hpp"
#include "xlab/transfer.hpp"

namespace xlab {

using Json = nlohmann::ordered_json;

// Locale-independent shortest-exact rendering at 17 significant digits.
std::string fmt17(double v);

// {"d": int, "re": [[...]], "im": [[...]]}, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {"n":..., "d":..., "matrices":[...]}
Json matrix_fn_to_json(const MatrixFn& f);
MatrixFn matrix_fn_from_json(const Json& j);

Json to_json(const GTReport& r);
Json to_json(const TailReport& r);
Json to_json(const HealyReport& r);
Json to_json(const MgfReport& r);
Json to_json(const MartingalePropertyReport& r);
Json to_json(const BoundsReport& r);
Json to_json(const ShrinkReport& r);

}  // namespace xlab
