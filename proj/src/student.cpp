#include "seacot/student.hpp"

#include <map>

#include <spdlog/spdlog.h>

#include "seacot/answer.hpp"

namespace seacot {

namespace {

const char* template_for(StudentMode mode) {
  switch (mode) {
    case StudentMode::Input: return "student_x";
    case StudentMode::Explanation: return "student_e";
    case StudentMode::Both: return "student_ex";
  }
  return "student_ex";
}

std::string body(const QAInstance& inst, std::string_view explanation, StudentMode mode) {
  std::string out;
  if (mode != StudentMode::Input) out += "Explanation: " + std::string(explanation) + "\n";
  if (mode != StudentMode::Explanation) out += "Q: " + inst.question + "\n";
  out += "Answer Choices:\n" + format_choices(inst) + "\n";
  return out;
}

}  // namespace

std::string student_prompt(const QAInstance& instance, std::string_view explanation, StudentMode mode,
                           const TemplateLibrary& templates, std::span<const StudentDemo> demos) {
  std::string demo_text;
  for (const auto& d : demos)
    demo_text += body(d.instance, d.explanation, mode) + "The answer is " + format_answer(d.instance, d.instance.gold) + ".\n\n";
  return templates.render(template_for(mode), {{"demos", demo_text},
                                               {"question", instance.question},
                                               {"choices", format_choices(instance)},
                                               {"explanation", std::string(explanation)}});
}

PredictionRecord simulate_one(const QAInstance& instance, const TechniqueOutput& output, Gateway& student,
                              const TemplateLibrary& templates, std::span<const StudentDemo> demos) {
  auto correct = [&](StudentMode mode) {
    try {
      const auto c = student.complete(student_prompt(instance, output.explanation, mode, templates, demos),
                                      GenerationParams::greedy(16), templates.stop_sequences(template_for(mode)));
      const auto label = extract_answer("The answer is " + trim(c.text), instance.choices);
      return label && *label == instance.gold;
    } catch (const Error& e) {
      spdlog::warn("student abstained on {} ({}): {}", instance.id, template_for(mode), e.what());
      return false;
    }
  };
  PredictionRecord r;
  r.instance_id = instance.id;
  r.correct_full = correct(StudentMode::Both);
  r.correct_input_only = correct(StudentMode::Input);
  r.correct_expl_only = correct(StudentMode::Explanation);
  return r;
}

std::vector<PredictionRecord> simulate_student_prompted(std::span<const TechniqueOutput> outputs,
                                                        std::span<const QAInstance> instances, Gateway& student,
                                                        const TemplateLibrary& templates,
                                                        std::span<const StudentDemo> demos) {
  std::map<std::string_view, const QAInstance*> by_id;
  for (const auto& i : instances) by_id[i.id] = &i;
  std::vector<PredictionRecord> out;
  for (const auto& o : outputs) {
    auto it = by_id.find(o.instance_id);
    if (it == by_id.end()) continue;
    out.push_back(simulate_one(*it->second, o, student, templates, demos));
  }
  return out;
}

}  // namespace seacot
