// Compiled-in prompt templates. Exemplars follow the usual chain-of-thought
// few-shot layout; swap in your own through a template directory overlay.

#include "seacot/templates.hpp"

namespace seacot {

namespace {

constexpr const char* kCotLettered = "{examples}Q: {question}\nAnswer Choices:\n{choices}\nA:";

constexpr const char* kCotLetteredExamples = R"(Q: What do plants need in order to make their own food?
Answer Choices:
(A) darkness
(B) sunlight
(C) salt water
(D) sand
A: Plants make food through photosynthesis. Photosynthesis uses light energy from the sun to turn water and carbon dioxide into sugar. So the answer is (B).
---
Q: Which of these would let the most heat travel through?
Answer Choices:
(A) a new pair of jeans
(B) a steel spoon in a cafeteria
(C) a cotton candy at a store
(D) a calvin klein cotton hat
A: Heat travels easily through materials that are thermal conductors. Metals such as steel are good thermal conductors, while cloth and cotton are insulators. So the answer is (B).
---
Q: A person wants to start saving money so that they can afford a nice vacation at the end of the year. After looking over their budget and expenses, they decide the best way to save money is to
Answer Choices:
(A) make more phone calls
(B) quit eating lunch out
(C) buy less with monopoly money
(D) have lunch with friends
A: Saving money means spending less of it. Eating lunch out costs money every day, so cutting it reduces expenses. So the answer is (B).
---
Q: The sun is responsible for
Answer Choices:
(A) puppies learning new tricks
(B) children growing up and getting old
(C) flowers wilting in a vase
(D) plants sprouting, blooming and wilting
A: The sun provides the light and energy that plants use to grow. Sprouting, blooming and wilting are stages of plant growth driven by sunlight. So the answer is (D).
---
Q: When food is reduced in the stomach
Answer Choices:
(A) the mind needs time to digest
(B) take a second to digest what I said
(C) nutrients are being deconstructed
(D) reader's digest is a body of works
A: Reducing food in the stomach is digestion. Digestion breaks food down into nutrients the body can absorb. So the answer is (C).
---
Q: Poison causes harm to which of the following?
Answer Choices:
(A) a Tree
(B) a robot
(C) a house
(D) a car
A: Poison harms living things. A tree is a living thing, while robots, houses and cars are not alive. So the answer is (A).
---
Q: A magnet will stick to
Answer Choices:
(A) a belt buckle
(B) a wooden table
(C) a plastic cup
(D) a paper plate
A: Magnets attract objects made of iron or steel. A belt buckle is usually made of metal, while wood, plastic and paper are not magnetic. So the answer is (A).)";

constexpr const char* kAnswerLettered = "{examples}Q: {question}\nAnswer Choices:\n{choices}\nA: {explanation}\nSo the answer is";

constexpr const char* kAnswerLetteredExamples = R"(Q: What do plants need in order to make their own food?
Answer Choices:
(A) darkness
(B) sunlight
(C) salt water
(D) sand
A: Plants make food through photosynthesis, which uses light energy from the sun.
So the answer is (B).
---
Q: Poison causes harm to which of the following?
Answer Choices:
(A) a Tree
(B) a robot
(C) a house
(D) a car
A: Poison harms living things, and a tree is the only living thing listed.
So the answer is (A).)";

constexpr const char* kQdDecomposeLettered =
    "Break the question into simpler sub-questions that lead to the answer.\n\n{examples}Q: {question}\nAnswer "
    "Choices:\n{choices}\nSub-questions:";

constexpr const char* kQdDecomposeLetteredExamples = R"(Q: What do plants need in order to make their own food?
Answer Choices:
(A) darkness
(B) sunlight
(C) salt water
(D) sand
Sub-questions:
1. How do plants make their own food?
2. What does photosynthesis require?
---
Q: A magnet will stick to
Answer Choices:
(A) a belt buckle
(B) a wooden table
(C) a plastic cup
(D) a paper plate
Sub-questions:
1. What kind of material do magnets attract?
2. Which of the objects is made of that material?)";

constexpr const char* kQdSubanswer =
    "Answer the sub-question in one sentence.\n\n{examples}Q: {question}\n{context}Sub-question: "
    "{subquestion}\nAnswer:";

constexpr const char* kQdSubanswerExamples = R"(Q: What do plants need in order to make their own food?
Sub-question: How do plants make their own food?
Answer: Plants make their own food through photosynthesis.
---
Q: A magnet will stick to
Sub-question 1: What kind of material do magnets attract?
Answer 1: Magnets attract iron and steel.
Sub-question: Which of the objects is made of that material?
Answer: A belt buckle is usually made of metal such as steel.)";

constexpr const char* kQdConcludeLettered =
    "{examples}Q: {question}\nAnswer Choices:\n{choices}\n{context}\nSo the answer is";

constexpr const char* kQdConcludeLetteredExamples = R"(Q: What do plants need in order to make their own food?
Answer Choices:
(A) darkness
(B) sunlight
(C) salt water
(D) sand
Sub-question 1: How do plants make their own food?
Answer 1: Plants make their own food through photosynthesis.
Sub-question 2: What does photosynthesis require?
Answer 2: Photosynthesis requires light energy from the sun.
So the answer is (B).)";

constexpr const char* kSrFeedback =
    "Give feedback on how well the reasoning explains the answer: is every step relevant, correct and connected "
    "to the question? If the reasoning is already clear and complete, say \"Stop refining the answer.\"\n\n"
    "{examples}Q: {question}\nAnswer Choices:\n{choices}\nA: {output}\nFeedback:";

constexpr const char* kSrFeedbackExamples = R"(Q: Poison causes harm to which of the following?
Answer Choices:
(A) a Tree
(B) a robot
(C) a house
(D) a car
A: Trees are green. So the answer is (A).
Feedback: The reasoning does not explain why poison harms a tree. It should state that poison harms living things and that a tree is the only living thing among the choices.
---
Q: Poison causes harm to which of the following?
Answer Choices:
(A) a Tree
(B) a robot
(C) a house
(D) a car
A: Poison harms living things. A tree is a living thing, while robots, houses and cars are not alive. So the answer is (A).
Feedback: Each step is relevant and leads directly to the answer. Stop refining the answer.)";

constexpr const char* kSrRefine =
    "Rewrite the reasoning so that it addresses the feedback, then state the answer.\n\n{examples}Q: "
    "{question}\nAnswer Choices:\n{choices}\nA: {output}\nFeedback: {feedback}\nRefined A:";

constexpr const char* kSrRefineExamples = R"(Q: Poison causes harm to which of the following?
Answer Choices:
(A) a Tree
(B) a robot
(C) a house
(D) a car
A: Trees are green. So the answer is (A).
Feedback: The reasoning does not explain why poison harms a tree. It should state that poison harms living things and that a tree is the only living thing among the choices.
Refined A: Poison harms living things. A tree is a living thing, while robots, houses and cars are not alive. So the answer is (A).)";

constexpr const char* kEntailment =
    "Decide whether the premise entails the hypothesis. Answer yes for entailment and no for "
    "contradiction.\n\n{examples}Premise: {premise}\nHypothesis: {hypothesis}\nAnswer:";

constexpr const char* kEntailmentExamples = R"(Premise: A man playing an electric guitar on stage.
Hypothesis: A man is performing music.
Answer: yes
---
Premise: A soccer game with multiple males playing.
Hypothesis: Some men are playing a sport.
Answer: yes
---
Premise: A black race car starts up in front of a crowd of people.
Hypothesis: A man is driving down a lonely road.
Answer: no
---
Premise: Two women are embracing while holding to go packages.
Hypothesis: The men are fighting outside a deli.
Answer: no)";

constexpr const char* kParaphrase =
    "Paraphrase the following reasoning. Keep the meaning and the conclusion the same and do not add new "
    "information.\n\nReasoning: {explanation}\nParaphrased reasoning:";

constexpr const char* kMistakes =
    "Rewrite the reasoning so that it contains factual mistakes which lead to a different conclusion. Keep the "
    "writing style.\n\n{examples}Reasoning: {explanation}\nReasoning with mistakes:";

constexpr const char* kMistakesExamples = R"(Reasoning: Plants make food through photosynthesis. Photosynthesis uses light energy from the sun to turn water and carbon dioxide into sugar.
Reasoning with mistakes: Plants make food by absorbing salt. Salt water gives plants the minerals they turn into sugar.
---
Reasoning: Magnets attract objects made of iron or steel. A belt buckle is usually made of metal.
Reasoning with mistakes: Magnets attract objects made of wood. A wooden table is the most wooden object here.)";

constexpr const char* kMistakesQd =
    "Rewrite the answer to the sub-question so that it is factually wrong.\n\n{examples}Sub-question: "
    "{subquestion}\nAnswer: {subanswer}\nWrong answer:";

constexpr const char* kMistakesQdExamples = R"(Sub-question: What does photosynthesis require?
Answer: Photosynthesis requires light energy from the sun.
Wrong answer: Photosynthesis requires complete darkness.
---
Sub-question: What kind of material do magnets attract?
Answer: Magnets attract iron and steel.
Wrong answer: Magnets attract paper and plastic.)";

constexpr const char* kCfTarget =
    "Given a question, its answer choices and its current answer, name the next most plausible answer "
    "choice.\n\n{examples}Question: {question}\nAnswer Choices:\n{choices}\nCurrent answer: {answer}\nNext possible "
    "answer:";

constexpr const char* kCfTargetExamples = R"(Question: What do plants need in order to make their own food?
Answer Choices:
(A) darkness
(B) sunlight
(C) salt water
(D) sand
Current answer: (B) sunlight
Next possible answer: (C)
---
Question: A magnet will stick to
Answer Choices:
(A) a belt buckle
(B) a wooden table
(C) a plastic cup
(D) a paper plate
Current answer: (A) a belt buckle
Next possible answer: (B)
---
Question: Poison causes harm to which of the following?
Answer Choices:
(A) a Tree
(B) a robot
(C) a house
(D) a car
Current answer: (A) a Tree
Next possible answer: (B))";

constexpr const char* kCfEdit =
    "Edit the question as little as possible so that the target answer becomes the correct one.\n\n{examples}"
    "Question: {question}\nAnswer Choices:\n{choices}\nCurrent answer: {answer}\nTarget answer: {target}\nEdited "
    "question:";

constexpr const char* kCfEditExamples = R"(Question: What do plants need in order to make their own food?
Answer Choices:
(A) darkness
(B) sunlight
(C) salt water
(D) sand
Current answer: (B) sunlight
Target answer: (C) salt water
Edited question: What do seaweeds need to absorb in order to get minerals?
---
Question: A magnet will stick to
Answer Choices:
(A) a belt buckle
(B) a wooden table
(C) a plastic cup
(D) a paper plate
Current answer: (A) a belt buckle
Target answer: (B) a wooden table
Edited question: A wood screw will stick to
---
Question: Poison causes harm to which of the following?
Answer Choices:
(A) a Tree
(B) a robot
(C) a house
(D) a car
Current answer: (A) a Tree
Target answer: (B) a robot
Edited question: A computer virus causes harm to which of the following?)";

constexpr const char* kEditHighlight =
    "The edited question was produced by changing a few words of the original question. List only the words that "
    "were inserted or changed in the edited question.\n\nOriginal question: {original}\nEdited question: "
    "{edited}\nChanged words:";

constexpr const char* kStudentInput =
    "Answer the question.\n\n{demos}Q: {question}\nAnswer Choices:\n{choices}\nThe answer is";
constexpr const char* kStudentExplanation =
    "Answer the question.\n\n{demos}Explanation: {explanation}\nAnswer Choices:\n{choices}\nThe answer is";
constexpr const char* kStudentBoth =
    "Answer the question.\n\n{demos}Explanation: {explanation}\nQ: {question}\nAnswer Choices:\n{choices}\nThe "
    "answer is";

constexpr const char* kStopCot = "\\n\\nQ:\n\\nQ:";
constexpr const char* kStopLine = "\\n";
constexpr const char* kStopBlock = "\\n\\n";

// Binary (yes/no) variants.
constexpr const char* kCotBinary = "{examples}Q: {question}\nA:";

constexpr const char* kCotBinaryExamples = R"(Q: Do hamsters provide food for any animals?
A: Hamsters are prey animals. Prey are food for predators. Thus, hamsters provide food for some animals. So the answer is yes.
---
Q: Could a llama birth twice during the War in Vietnam?
A: The War in Vietnam lasted about 20 years. The gestation period of a llama is 11 months, which is less than a year. Thus, a llama could give birth twice during the War in Vietnam. So the answer is yes.
---
Q: Would a pear sink in water?
A: The density of a pear is about 0.6 g per cubic centimeter, which is less than water. Objects less dense than water float. Thus, a pear would float. So the answer is no.
---
Q: Can a sunflower grow without light?
A: Sunflowers are plants and make food through photosynthesis. Photosynthesis requires light. Thus, a sunflower cannot grow without light. So the answer is no.
---
Q: Is a spider an insect?
A: Insects have six legs. Spiders have eight legs and belong to the arachnids. Thus, a spider is not an insect. So the answer is no.
---
Q: Is ice less dense than liquid water?
A: Water expands when it freezes, so the same mass takes up more space as ice. Thus, ice is less dense than liquid water. So the answer is yes.)";

constexpr const char* kAnswerBinary = "{examples}Q: {question}\nA: {explanation}\nSo the answer is";

constexpr const char* kAnswerBinaryExamples = R"(Q: Do hamsters provide food for any animals?
A: Hamsters are prey animals, and prey are food for predators.
So the answer is yes.
---
Q: Would a pear sink in water?
A: A pear is less dense than water, so it floats.
So the answer is no.)";

constexpr const char* kQdDecomposeBinary =
    "Break the question into simpler sub-questions that lead to the answer.\n\n{examples}Q: "
    "{question}\nSub-questions:";

constexpr const char* kQdDecomposeBinaryExamples = R"(Q: Would a pear sink in water?
Sub-questions:
1. What is the density of a pear?
2. Is that density greater than the density of water?
---
Q: Is a spider an insect?
Sub-questions:
1. How many legs do insects have?
2. How many legs do spiders have?)";

constexpr const char* kQdConcludeBinary = "{examples}Q: {question}\n{context}\nSo the answer is";

constexpr const char* kQdConcludeBinaryExamples = R"(Q: Would a pear sink in water?
Sub-question 1: What is the density of a pear?
Answer 1: A pear has a density of about 0.6 g per cubic centimeter.
Sub-question 2: Is that density greater than the density of water?
Answer 2: No, water has a density of 1 g per cubic centimeter.
So the answer is no.)";

constexpr const char* kSrFeedbackBinary =
    "Give feedback on how well the reasoning explains the answer: is every step relevant, correct and connected "
    "to the question? If the reasoning is already clear and complete, say \"Stop refining the answer.\"\n\n"
    "{examples}Q: {question}\nA: {output}\nFeedback:";

constexpr const char* kSrFeedbackBinaryExamples = R"(Q: Would a pear sink in water?
A: Pears are fruit. So the answer is no.
Feedback: Being a fruit does not explain whether it sinks. The reasoning should compare the density of a pear with the density of water.
---
Q: Would a pear sink in water?
A: The density of a pear is about 0.6 g per cubic centimeter, which is less than water. Objects less dense than water float. So the answer is no.
Feedback: Each step is relevant and leads directly to the answer. Stop refining the answer.)";

constexpr const char* kSrRefineBinary =
    "Rewrite the reasoning so that it addresses the feedback, then state the answer.\n\n{examples}Q: "
    "{question}\nA: {output}\nFeedback: {feedback}\nRefined A:";

constexpr const char* kSrRefineBinaryExamples = R"(Q: Would a pear sink in water?
A: Pears are fruit. So the answer is no.
Feedback: Being a fruit does not explain whether it sinks. The reasoning should compare the density of a pear with the density of water.
Refined A: The density of a pear is about 0.6 g per cubic centimeter, which is less than water. Objects less dense than water float. So the answer is no.)";

constexpr const char* kCfEditBinaryExamples = R"(Question: Would a pear sink in water?
Answer Choices:
yes or no
Current answer: no
Target answer: yes
Edited question: Would a pebble sink in water?
---
Question: Is a spider an insect?
Answer Choices:
yes or no
Current answer: no
Target answer: yes
Edited question: Is a beetle an insect?
---
Question: Can a sunflower grow without light?
Answer Choices:
yes or no
Current answer: no
Target answer: yes
Edited question: Can a mushroom grow without light?)";

using Entries = std::map<std::string, std::string, std::less<>>;

Entries common_entries() {
  return {
      {"cot", kCotLettered},
      {"cot.examples", kCotLetteredExamples},
      {"cot.stop", kStopCot},
      {"answer", kAnswerLettered},
      {"answer.examples", kAnswerLetteredExamples},
      {"answer.stop", kStopLine},
      {"qd_decompose", kQdDecomposeLettered},
      {"qd_decompose.examples", kQdDecomposeLetteredExamples},
      {"qd_decompose.stop", kStopBlock},
      {"qd_subanswer", kQdSubanswer},
      {"qd_subanswer.examples", kQdSubanswerExamples},
      {"qd_subanswer.stop", kStopLine},
      {"qd_conclude", kQdConcludeLettered},
      {"qd_conclude.examples", kQdConcludeLetteredExamples},
      {"qd_conclude.stop", kStopLine},
      {"sr_init", kCotLettered},
      {"sr_init.examples", kCotLetteredExamples},
      {"sr_init.stop", kStopCot},
      {"sr_feedback", kSrFeedback},
      {"sr_feedback.examples", kSrFeedbackExamples},
      {"sr_feedback.stop", kStopCot},
      {"sr_refine", kSrRefine},
      {"sr_refine.examples", kSrRefineExamples},
      {"sr_refine.stop", "\\n\\nQ:\n\\nFeedback:"},
      {"entailment", kEntailment},
      {"entailment.examples", kEntailmentExamples},
      {"entailment.stop", kStopLine},
      {"paraphrase", kParaphrase},
      {"paraphrase.stop", kStopBlock},
      {"mistakes", kMistakes},
      {"mistakes.examples", kMistakesExamples},
      {"mistakes.stop", kStopBlock},
      {"mistakes_qd", kMistakesQd},
      {"mistakes_qd.examples", kMistakesQdExamples},
      {"mistakes_qd.stop", kStopLine},
      {"cf_target", kCfTarget},
      {"cf_target.examples", kCfTargetExamples},
      {"cf_target.stop", kStopLine},
      {"cf_edit", kCfEdit},
      {"cf_edit.examples", kCfEditExamples},
      {"cf_edit.stop", kStopLine},
      {"edit_highlight", kEditHighlight},
      {"edit_highlight.stop", kStopLine},
      {"student_x", kStudentInput},
      {"student_x.stop", kStopLine},
      {"student_e", kStudentExplanation},
      {"student_e.stop", kStopLine},
      {"student_ex", kStudentBoth},
      {"student_ex.stop", kStopLine},
  };
}

Entries binary_entries() {
  Entries e = common_entries();
  e["cot"] = kCotBinary;
  e["cot.examples"] = kCotBinaryExamples;
  e["answer"] = kAnswerBinary;
  e["answer.examples"] = kAnswerBinaryExamples;
  e["qd_decompose"] = kQdDecomposeBinary;
  e["qd_decompose.examples"] = kQdDecomposeBinaryExamples;
  e["qd_conclude"] = kQdConcludeBinary;
  e["qd_conclude.examples"] = kQdConcludeBinaryExamples;
  e["sr_init"] = kCotBinary;
  e["sr_init.examples"] = kCotBinaryExamples;
  e["sr_feedback"] = kSrFeedbackBinary;
  e["sr_feedback.examples"] = kSrFeedbackBinaryExamples;
  e["sr_refine"] = kSrRefineBinary;
  e["sr_refine.examples"] = kSrRefineBinaryExamples;
  e["cf_edit.examples"] = kCfEditBinaryExamples;
  return e;
}

}  // namespace

const std::map<std::string, std::string, std::less<>>& default_template_entries(bool binary) {
  static const Entries lettered = common_entries();
  static const Entries yes_no = binary_entries();
  return binary ? yes_no : lettered;
}

}  // namespace seacot
