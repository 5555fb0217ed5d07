#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "lwqm/grid.hpp"

using namespace lwqm;

namespace {

grid::NumericTable sample_table() {
  grid::NumericTable t;
  t.meta["command"] = "test";
  t.meta["alpha"] = "1";
  t.add_column("x");
  t.add_column("f");
  t.push_row({0.5, -1.25e-7});
  t.push_row({1.0, 3.14159265358979});
  return t;
}

} // namespace

TEST_CASE("csv layout and formatting") {
  std::ostringstream os;
  grid::write_csv(sample_table(), os);
  CHECK(os.str() ==
        "# alpha: 1\n"
        "# command: test\n"
        "x,f\n"
        "5.000000000000e-01,-1.250000000000e-07\n"
        "1.000000000000e+00,3.141592653590e+00\n");
}

TEST_CASE("writers are deterministic") {
  std::ostringstream a, b;
  grid::write_csv(sample_table(), a);
  grid::write_csv(sample_table(), b);
  CHECK(a.str() == b.str());
  std::ostringstream ja, jb;
  grid::write_json(sample_table(), ja);
  grid::write_json(sample_table(), jb);
  CHECK(ja.str() == jb.str());
}

TEST_CASE("json carries the same numbers as csv") {
  std::ostringstream js;
  grid::write_json(sample_table(), js);
  const std::string j = js.str();
  CHECK(j.find("\"5.000000000000e-01\"") != std::string::npos);
  CHECK(j.find("\"-1.250000000000e-07\"") != std::string::npos);
  CHECK(j.find("\"3.141592653590e+00\"") != std::string::npos);
  CHECK(j.find("\"columns\": [\"x\", \"f\"]") != std::string::npos);
}

TEST_CASE("row shape is enforced") {
  grid::NumericTable t;
  t.add_column("x");
  t.add_column("y");
  CHECK_THROWS_AS(t.push_row({1.0}), IndexError);
}

TEST_CASE("empty table still writes valid output") {
  grid::NumericTable t;
  std::ostringstream cs, js;
  grid::write_csv(t, cs);
  grid::write_json(t, js);
  CHECK(cs.str() == "\n");
  CHECK(js.str().find("\"rows\": []") != std::string::npos);
}
