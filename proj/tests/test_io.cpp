#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "fixtures.hpp"
#include "nrp/io.hpp"

using namespace nrp;

namespace {

const std::string kComm3Text =
    "nrp-instance 1\n"
    "requirements 8\n"
    "1 6\n"
    "2 10\n"
    "3 16\n"
    "4 4\n"
    "5 1\n"
    "6 7\n"
    "7 6\n"
    "8 1\n"
    "dependencies 7\n"
    "1 3\n"
    "1 4\n"
    "2 6\n"
    "4 5\n"
    "6 7\n"
    "7 5\n"
    "8 5\n"
    "customers 3\n"
    "1 30 2 3 4\n"
    "2 25 2 5 6\n"
    "3 20 2 7 8\n"
    "budget 36\n";

void expect_parse_error(const std::string& text, int line,
                        const std::string& fragment) {
  try {
    read_instance(text);
    FAIL("expected ParseError for: " << fragment);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(fragment));
  }
}

}  // namespace

TEST_CASE("parse comm3 from text", "[io]") {
  const InstanceFile file = read_instance(kComm3Text);
  const Instance& inst = file.instance;
  REQUIRE(file.budget.has_value());
  CHECK(*file.budget == 36);
  CHECK(inst.requirement_count() == 8);
  CHECK(inst.customer_count() == 3);
  CHECK(inst.cost(3) == 16);
  CHECK(inst.profit(2) == 25);
  CHECK(inst.requested(3) == std::vector<RequirementId>{7, 8});
  CHECK(customer_closure(inst, 2) ==
        std::vector<RequirementId>{1, 2, 4, 5, 6, 7, 8});
}

TEST_CASE("comments, blank lines and CRLF are tolerated", "[io]") {
  const std::string text =
      "# generated by hand\r\n"
      "nrp-instance 1\r\n"
      "\r\n"
      "requirements 2\n"
      "1 3\n"
      "2 4\n"
      "# no dependencies\n"
      "dependencies 0\n"
      "customers 1\n"
      "1 9 1 2\n";
  const InstanceFile file = read_instance(text);
  CHECK(file.instance.requirement_count() == 2);
  CHECK_FALSE(file.budget.has_value());
}

TEST_CASE("round trip through write_instance", "[io]") {
  // Canonical text parses and rewrites to the same bytes.
  const InstanceFile file = read_instance(kComm3Text);
  CHECK(write_instance(file.instance, file.budget) == kComm3Text);

  // A hand-built instance survives a write/read cycle.
  const Instance inst = fixtures::multilevel5();
  const InstanceFile back = read_instance(write_instance(inst, 7));
  CHECK(back.budget == std::optional<std::int64_t>{7});
  CHECK(back.instance.arcs() == inst.arcs());
  for (CustomerId c = 1; c <= 5; ++c) {
    CHECK(back.instance.profit(c) == inst.profit(c));
    CHECK(back.instance.requested(c) == inst.requested(c));
  }
}

TEST_CASE("parse errors carry line numbers", "[io]") {
  expect_parse_error("bogus 1\n", 1, "nrp-instance");
  expect_parse_error("nrp-instance 2\n", 1, "nrp-instance 1");
  expect_parse_error(
      "nrp-instance 1\nrequirements 2\n1 5\n3 5\n", 4, "requirement id 2");
  expect_parse_error(
      "nrp-instance 1\nrequirements 1\n1 -4\n", 3, "non-negative");
  expect_parse_error(
      "nrp-instance 1\nrequirements 1\n1 x\n", 3, "requirement cost");
  expect_parse_error(
      "nrp-instance 1\nrequirements 1\n1 2\ndependencies 1\n1 2\n", 5,
      "out of range");
  expect_parse_error(
      "nrp-instance 1\nrequirements 1\n1 2\ndependencies 0\ncustomers 1\n"
      "1 0 1 1\n",
      6, "profit must be positive");
  expect_parse_error(
      "nrp-instance 1\nrequirements 1\n1 2\ndependencies 0\ncustomers 1\n"
      "1 5 2 1 1\n",
      6, "duplicate requirement 1");
  expect_parse_error(
      "nrp-instance 1\nrequirements 1\n1 2\ndependencies 0\ncustomers 0\n"
      "budget -3\n",
      6, "non-negative");
  expect_parse_error(
      "nrp-instance 1\nrequirements 1\n1 2\ndependencies 0\ncustomers 0\n"
      "budget 3\nleftover\n",
      7, "unexpected content");
  expect_parse_error("nrp-instance 1\nrequirements 2\n1 5\n", 4,
                     "unexpected end of file");
}

TEST_CASE("cycle diagnostics name an offending arc", "[io]") {
  const std::string text =
      "nrp-instance 1\n"
      "requirements 3\n"
      "1 1\n"
      "2 1\n"
      "3 1\n"
      "dependencies 3\n"
      "1 2\n"
      "2 3\n"
      "3 1\n"
      "customers 0\n";
  try {
    read_instance(text);
    FAIL("expected a cycle error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 9);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("cycle"));
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("3 -> 1"));
  }
}

TEST_CASE("read_instance_file reports missing files", "[io]") {
  CHECK_THROWS_AS(read_instance_file("/nonexistent/x.nrp"), InputError);
}
