#include "doctest.h"

#include "seacot/answer.hpp"
#include "support.hpp"

using namespace seacot;
using seacot::testing::lettered;
using seacot::testing::yes_no;

namespace {

const QAInstance kLamp = lettered("l", "What gives light?", {"a lamp", "a rock", "sand", "a lamp post"}, "A");
const QAInstance kBinary = yes_no("b", "Is ice cold?", true);

std::optional<Label> ans(std::string_view text, const QAInstance& q = kLamp) { return extract_answer(text, q.choices); }

}  // namespace

TEST_CASE("declared labels in the usual shapes") {
  CHECK(ans("Light comes from lamps. So the answer is (A).") == "A");
  CHECK(ans("the answer is B") == "B");
  CHECK(ans("Answer: (c)") == "C");
  CHECK(ans("The answer is [D].") == "D");
  CHECK(ans("The answer is option C.") == "C");
  CHECK(ans("**Answer:** B") == "B");
}

TEST_CASE("the last parseable declaration wins") {
  CHECK(ans("At first the answer is (B). On reflection the answer is (C).") == "C");
  CHECK(ans("The answer is (C). The answer is unclear.") == "C");
}

TEST_CASE("choice text is matched verbatim, longest first") {
  CHECK(ans("So the answer is a lamp post.") == "D");
  CHECK(ans("So the answer is a lamp.") == "A");
  CHECK(ans("The answer is sand") == "C");
}

TEST_CASE("a lone lowercase article is not a label") {
  // "a rock" must resolve through the choice text, not as label "a".
  CHECK(ans("The answer is a rock.") == "B");
}

TEST_CASE("binary sets accept yes/no and true/false") {
  CHECK(ans("Ice is frozen water. So the answer is yes.", kBinary) == "yes");
  CHECK(ans("The answer is False", kBinary) == "no");
  CHECK(ans("The answer is maybe", kBinary) == std::nullopt);
}

TEST_CASE("bare final line fallback") {
  CHECK(ans("Lamps give light.\n(A)") == "A");
  CHECK(ans("Lamps give light.\nB.") == "B");
  CHECK(ans("Lamps give light.\nno label here") == std::nullopt);
  CHECK(ans("Ice is cold.\nYes", kBinary) == "yes");
}

TEST_CASE("unknown labels and words that merely contain 'answer' do not parse") {
  CHECK(ans("The answer is (F).") == std::nullopt);
  CHECK(ans("Nobody answers this.") == std::nullopt);
  CHECK(ans("") == std::nullopt);
}

TEST_CASE("stripping the declaration keeps the reasoning") {
  CHECK(strip_answer_declaration("Lamps glow. Rocks do not. So the answer is (A).", kLamp.choices) ==
        "Lamps glow. Rocks do not.");
  CHECK(strip_answer_declaration("Lamps glow.\nAnswer: A", kLamp.choices) == "Lamps glow.");
  // Nothing precedes the declaration: keep everything.
  CHECK(strip_answer_declaration("The answer is (A).", kLamp.choices) == "The answer is (A).");
  CHECK(strip_answer_declaration("  no declaration ", kLamp.choices) == "no declaration");
}
