#pragma once

namespace seclab::dual {

// Principal branch W_0 on [-1/e, 0]; throws std::domain_error outside.
double lambert_w_principal(double z);

}  // namespace seclab::dual
