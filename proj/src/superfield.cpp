#include "scpn/superfield.hpp"

namespace scpn {

template class Jet<GaussRational>;
template class Jet<Complex>;
template class Grassmann<Jet<GaussRational>>;
template class Grassmann<Jet<Complex>>;
template class SuperVector<GaussRational>;
template class SuperVector<Complex>;
template class SuperMatrix<GaussRational>;
template class SuperMatrix<Complex>;

} // namespace scpn
