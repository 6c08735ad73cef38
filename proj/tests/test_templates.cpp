#include "doctest.h"

#include <fstream>

#include "seacot/errors.hpp"
#include "seacot/templates.hpp"
#include "support.hpp"

using namespace seacot;

TEST_CASE("slots are substituted once; values are not re-rendered") {
  CHECK(render_template("Q: {question}\nA:", {{"question", "Why {x}?"}}) == "Q: Why {x}?\nA:");
  CHECK(render_template("{a}{b}{a}", {{"a", "1"}, {"b", "2"}}) == "121");
  // Braces that do not form a slot pass through.
  CHECK(render_template("{ not a slot } {}", {}) == "{ not a slot } {}");
  CHECK_THROWS_AS(render_template("{missing}", {}), ConfigError);
}

TEST_CASE("choice formatting") {
  const auto q = seacot::testing::lettered("x", "q", {"red", "blue", "green", "gray"}, "B");
  CHECK(format_choices(q) == "(A) red\n(B) blue\n(C) green\n(D) gray");
  CHECK(format_answer(q, "C") == "(C) green");
  const auto b = seacot::testing::yes_no("y", "q", true);
  CHECK(format_choices(b) == "yes or no");
  CHECK(format_answer(b, "no") == "no");
}

TEST_CASE("exemplar blocks and shot counts") {
  TemplateLibrary lib;
  lib.set("t", "{examples}Q: {question}");
  lib.set("t.examples", "one\n---\ntwo\nlines\n---\nthree");
  CHECK(lib.examples("t").size() == 3);
  CHECK(lib.render("t", {{"question", "q"}}) == "one\n\ntwo\nlines\n\nthree\n\nQ: q");
  CHECK(lib.render("t", {{"question", "q"}}, 1) == "one\n\nQ: q");
  CHECK(lib.render("t", {{"question", "q"}}, 0) == "Q: q");
  CHECK_THROWS_AS(lib.render("t", {{"question", "q"}}, 4), ConfigError);
  // A caller-supplied block overrides the library exemplars.
  CHECK(lib.render("t", {{"question", "q"}, {"examples", "X\n"}}) == "X\nQ: q");
}

TEST_CASE("stop sequences unescape") {
  TemplateLibrary lib;
  lib.set("t.stop", "\\n\\nQ:\nEND\\t\n");
  CHECK(lib.stop_sequences("t") == std::vector<std::string>{"\n\nQ:", "END\t"});
  CHECK(lib.stop_sequences("other").empty());
}

TEST_CASE("every default template renders for both choice layouts") {
  for (const char* dataset : {"obqa", "strategyqa"}) {
    const auto lib = TemplateLibrary::defaults(dataset);
    const TemplateVars vars{{"question", "q"}, {"choices", "c"},       {"explanation", "e"}, {"context", "x"},
                            {"subquestion", "s"}, {"subanswer", "a"}, {"output", "o"},      {"feedback", "f"},
                            {"premise", "p"},     {"hypothesis", "h"}, {"answer", "y"},      {"target", "t"},
                            {"original", "o"},    {"edited", "e"},     {"demos", ""}};
    for (const char* name : {"cot", "answer", "qd_decompose", "qd_subanswer", "qd_conclude", "sr_init", "sr_feedback",
                             "sr_refine", "entailment", "paraphrase", "mistakes", "mistakes_qd", "cf_target",
                             "cf_edit", "edit_highlight", "student_x", "student_e", "student_ex"}) {
      CAPTURE(dataset);
      CAPTURE(name);
      CHECK_NOTHROW(lib.render(name, vars));
    }
  }
  CHECK(TemplateLibrary::defaults("obqa").get("cot") != TemplateLibrary::defaults("strategyqa").get("cot"));
}

TEST_CASE("directory overlay, dataset subdirectory last") {
  seacot::testing::TempDir dir("templates");
  std::filesystem::create_directories(dir.path() / "qasc");
  std::ofstream(dir.path() / "paraphrase.txt") << "Reword: {explanation}\n";
  std::ofstream(dir.path() / "qasc" / "paraphrase.txt") << "QASC reword: {explanation}\n";
  std::ofstream(dir.path() / "cot.examples.txt") << "only one";

  const auto obqa = TemplateLibrary::load("obqa", dir.path());
  CHECK(obqa.get("paraphrase") == "Reword: {explanation}");
  CHECK(obqa.examples("cot") == std::vector<std::string>{"only one"});
  const auto qasc = TemplateLibrary::load("qasc", dir.path());
  CHECK(qasc.get("paraphrase") == "QASC reword: {explanation}");
  CHECK(qasc.hashes().at("paraphrase") != obqa.hashes().at("paraphrase"));
  CHECK_THROWS_AS(TemplateLibrary::load("obqa", dir.path() / "absent"), ConfigError);
}
