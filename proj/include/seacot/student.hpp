#pragma once

// Prompted stand-in for a trained simulator: a (usually smaller) model is asked
// the question from the input alone, the explanation alone, and both.

#include <span>
#include <string>
#include <vector>

#include "seacot/core.hpp"
#include "seacot/gateway.hpp"
#include "seacot/templates.hpp"

namespace seacot {

// A solved training example shown to the student before the test question.
struct StudentDemo {
  QAInstance instance;
  std::string explanation;
};

enum class StudentMode { Input, Explanation, Both };

std::string student_prompt(const QAInstance& instance, std::string_view explanation, StudentMode mode,
                           const TemplateLibrary& templates, std::span<const StudentDemo> demos = {});

// One record per output, in order. Outputs whose instance is unknown are
// skipped. Backend or parse failures count as wrong answers in that mode.
PredictionRecord simulate_one(const QAInstance& instance, const TechniqueOutput& output, Gateway& student,
                              const TemplateLibrary& templates, std::span<const StudentDemo> demos = {});

std::vector<PredictionRecord> simulate_student_prompted(std::span<const TechniqueOutput> outputs,
                                                        std::span<const QAInstance> instances, Gateway& student,
                                                        const TemplateLibrary& templates,
                                                        std::span<const StudentDemo> demos = {});

}  // namespace seacot
