// Regenerates tests/data from the built-in models:
//   make_fixtures <dir>
#include <fstream>
#include <iostream>

#include "ucover/io.hpp"

using namespace ucover;

namespace {

void write(const std::string& dir, const std::string& name, const SimplicialSet& x) {
  std::ofstream f(dir + "/" + name + ".json");
  f << io::to_json(x).dump(1) << "\n";
  std::cout << name << ": " << x.total_count() << " simplices\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 1;
  }
  const std::string dir = argv[1];
  GroupPresentation s3;
  s3.generators = {"a", "b"};
  s3.relators = {{2, 2}, {1, 1, 1}, {1, 2, 1, 2}};
  const SimplicialSet pc = models::presentation_complex(s3);

  write(dir, "point", models::point());
  write(dir, "circle", models::circle());
  write(dir, "sphere2", models::sphere(2));
  write(dir, "wedge", models::wedge_circle_sphere());
  write(dir, "torus", models::torus());
  write(dir, "rp2", models::real_projective_space(2));
  write(dir, "rp3", models::real_projective_space(3));
  write(dir, "rp4", models::real_projective_space(4));
  write(dir, "lens3", models::cyclic_nerve_skeleton(3, 3));
  write(dir, "lens4", models::cyclic_nerve_skeleton(4, 3));
  write(dir, "sym3", pc);
  write(dir, "s5xrp3", cartesian_product(pc, models::real_projective_space(3)).set);
  write(dir, "rp2xrp2", cartesian_product(models::real_projective_space(2),
                                          models::real_projective_space(2)).set);
  return 0;
}
