// Cohomology of a few small groupoids through the library API.
#include <gpdcoh/examples.hpp>
#include <gpdcoh/sequences.hpp>

#include <iostream>

using namespace gpdcoh;

static void print(const std::string& what, const std::vector<std::size_t>& dims) {
  std::cout << what << ":";
  for (auto d : dims) std::cout << " " << d;
  std::cout << "\n";
}

int main() {
  const FiniteGroupoid S3 = groupGroupoid(symmetricGroup(3));
  const NerveTower T(S3, 4);
  print("S3, trivial line", cohomologyDims(repComplex(T, trivialRep(S3), 3), 3));

  const auto cone = builtinExample("cone-trivial");
  const NerveTower TC(cone.groupoid, 4);
  print("cone of 0 on the swap action", cohomologyDims(ruthComplex(TC, *cone.ruth, 3), 3));

  const auto twisted = builtinExample("twisted-cone");
  const NerveTower TT(twisted.groupoid, 4);
  const auto les = regularLes(TT, *twisted.ruth, 3);
  std::cout << "twisted cone regular sequence exact: " << (les.pass() ? "yes" : "no") << "\n";
}
