#!/usr/bin/env python3
"""Writes the mock scripts for the five-question end-to-end scenario.

Two techniques (CoT, SEA-CoT) with five samples per sampled run. The outcome
table each rule encodes is listed next to it; tests/test_experiment.cpp
re-derives the scores from the same table.
"""
import json
import pathlib

HERE = pathlib.Path(__file__).resolve().parent

QUESTIONS = {
    "q1": ("Which object would a compass needle point toward?",
           ["the moon", "magnetic north", "a bar magnet", "the ocean"], "B"),
    "q2": ("What do bees collect from flowers?", ["nectar", "leaves", "stones", "water"], "A"),
    "q3": ("What happens to water below zero degrees Celsius?",
           ["it boils", "it evaporates", "it freezes", "it glows"], "C"),
    "q4": ("Which animal is a mammal?", ["shark", "trout", "eagle", "dolphin"], "D"),
    "q5": ("What tool measures temperature?", ["thermometer", "ruler", "scale", "clock"], "A"),
}

# Sampled chains per question: (explanation, answer, logprob). The greedy
# CoT run sees the first one.
SAMPLES = {
    "q1": [("A compass needle is a small magnet. It lines up with the field of the Earth.", "B", -4.0),
           ("Needles spin freely.", "B", -2.0),
           ("The moon pulls the tides.", "A", -3.0),
           ("A compass needle points toward magnetic north because the needle is magnetized.", "B", -6.0),
           ("A bar magnet is nearby.", "C", -5.0)],
    "q2": [("Bees visit flowers to gather sweet nectar.", "A", -1.0)] * 5,
    "q3": [("Cold water turns solid.", "C", -1.0),
           ("Below zero degrees Celsius water freezes into ice.", "C", -3.0),
           ("It glows.", "D", -4.0),
           ("Water evaporates.", "B", -5.0),
           ("Cold water turns solid.", "C", -1.0)],
    "q4": [("Trout live in rivers and breathe air.", "B", -1.0)] * 5,
    "q5": [("A thermometer shows how hot something is.", "A", -1.0)] * 5,
}

# Entailment verdicts for candidate chains: (token, probability).
ENTAILMENT = {
    "A compass needle is a small magnet.": ("yes", 0.5),
    "Needles spin freely.": ("no", 0.6),
    "A compass needle points toward magnetic north": ("yes", 0.9),
    "Cold water turns solid.": ("no", 0.7),
    "Below zero degrees Celsius water freezes": ("yes", 0.9),
}

E1C = SAMPLES["q1"][0][0]
E1S = SAMPLES["q1"][3][0]
E2 = SAMPLES["q2"][0][0]
E3C = SAMPLES["q3"][0][0]
E3S = SAMPLES["q3"][1][0]
E4 = SAMPLES["q4"][0][0]
E5 = SAMPLES["q5"][0][0]


def para(e):
    return "Put differently: " + e


def mistake(e):
    return "Mistaken version: " + e


# Validator (modifier model) answers on modified explanations.
VALIDATOR = {
    para(E1C): "B", mistake(E1C): "A",
    para(E1S): "B", mistake(E1S): "C",
    para(E2): "C", mistake(E2): "A",        # both rejected
    para(E3C): "C", mistake(E3C): "B",
    para(E3S): "C", mistake(E3S): "B",
    para(E4): "B", mistake(E4): "D",
    para(E5): "A",                          # q5 mistake: modifier returns nothing
}

# Evaluated model answers on accepted modified explanations.
EVALUATED = {
    para(E1C): "B", mistake(E1C): "A",
    para(E1S): "B", mistake(E1S): "C",
    para(E3C): "D", mistake(E3C): "C",
    para(E3S): "C", mistake(E3S): "B",
    para(E4): "B", mistake(E4): "D",
    para(E5): "A",
}

# Counterfactuals: target returned by the modifier, edited question, edit
# words ("" falls back to the token diff), and the evaluated model's chain on
# the edited question.
COUNTERFACTUAL = {
    "q1": ("C", "Which object would iron filings cluster around?", "iron filings cluster around",
           ("Iron filings are pulled toward the poles of a bar magnet.", "C")),
    "q2": ("D", "What do bees drink on hot days?", "drink on hot days",
           ("Bees gather pollen on hot days.", "B")),
    "q3": ("A", "What happens to water above one hundred degrees Celsius?", "",
           ("Heat makes liquid bubble into vapor.", "A")),
    "q4": ("A", "Which animal is a fish with cartilage?", "fish with cartilage",
           ("Sharks have skeletons made of cartilage.", "A")),
    "q5": ("A", None, None, None),  # target equals gold: degenerate
}

# Student correctness per prompt.
STUDENT_INPUT = {"q1": "A", "q2": "A", "q3": "B", "q4": "B", "q5": "A"}
STUDENT_EXPL = {  # explanation -> (answer with e+x, answer with e only)
    E1C: ("B", "B"), E1S: ("B", "B"),
    E2: ("A", "C"),
    E3C: ("A", "A"), E3S: ("C", "C"),
    E4: ("D", "B"),
    E5: ("A", "A"),
}
EXPL_QUESTION = {E1C: "q1", E1S: "q1", E2: "q2", E3C: "q3", E3S: "q3", E4: "q4", E5: "q5"}


def chain(expl, label):
    return f"{expl} So the answer is ({label})."


def eval_script():
    rules = []
    for qid, (q, _, _) in QUESTIONS.items():
        rules.append({"contains": [f"Q: {q}\nAnswer Choices:"], "regex": r"\nA:$",
                      "responses": [{"text": " " + chain(e, l), "logprob": lp} for e, l, lp in SAMPLES[qid]]})
    for qid, (_, edited, _, run) in COUNTERFACTUAL.items():
        if edited is None:
            continue
        rules.append({"contains": [f"Q: {edited}\nAnswer Choices:"], "regex": r"\nA:$",
                      "responses": [{"text": " " + chain(*run), "logprob": -1.0}] * 5})
    for expl, label in EVALUATED.items():
        rules.append({"contains": [f"A: {expl}\nSo the answer is"], "regex": "So the answer is$",
                      "responses": [f" ({label})."]})
    for prefix, (tok, p) in ENTAILMENT.items():
        rules.append({"contains": [f"Hypothesis: {prefix}"], "regex": r"\nAnswer:$",
                      "responses": [{"text": " " + tok, "p": p}]})
    rules.append({"contains": ["Decide whether the premise entails"], "regex": r"\nAnswer:$",
                  "responses": [{"text": " yes", "p": 0.5}]})
    return {"rules": rules}


def modifier_script():
    rules = []
    for e in [E1C, E1S, E2, E3C, E3S, E4, E5]:
        rules.append({"contains": [f"Reasoning: {e}\nParaphrased reasoning:"], "responses": [" " + para(e)]})
        text = "" if e == E5 else " " + mistake(e)
        rules.append({"contains": [f"Reasoning: {e}\nReasoning with mistakes:"], "responses": [text]})
    for expl, label in VALIDATOR.items():
        rules.append({"contains": [f"A: {expl}\nSo the answer is"], "responses": [f" ({label})."]})
    for qid, (target, edited, edit, _) in COUNTERFACTUAL.items():
        q = QUESTIONS[qid][0]
        rules.append({"contains": [f"Question: {q}\n"], "regex": "Next possible answer:$",
                      "responses": [f" ({target})"]})
        if edited is None:
            continue
        rules.append({"contains": [f"Question: {q}\n"], "regex": "Edited question:$", "responses": [" " + edited]})
        rules.append({"contains": [f"Original question: {q}\n"], "responses": [" " + edit if edit else ""]})
    return {"rules": rules}


def student_script():
    rules = []
    for expl, (both, only) in STUDENT_EXPL.items():
        q = QUESTIONS[EXPL_QUESTION[expl]][0]
        rules.append({"contains": [f"Explanation: {expl}\nQ: {q}\n"], "responses": [f" ({both})."]})
        rules.append({"contains": [f"Explanation: {expl}\nAnswer Choices:"], "responses": [f" ({only})."]})
    for qid, label in STUDENT_INPUT.items():
        q = QUESTIONS[qid][0]
        rules.append({"contains": [f"Answer the question.\n\nQ: {q}\n"], "responses": [f" ({label})."]})
    return {"rules": rules}


def dataset():
    lines = []
    for qid, (q, choices, gold) in QUESTIONS.items():
        row = {"id": qid, "question": {"stem": q, "choices": [{"text": t, "label": "ABCD"[i]} for i, t in enumerate(choices)]},
               "answerKey": gold}
        lines.append(json.dumps(row))
    return "\n".join(lines) + "\n"


def main():
    for name, doc in [("eval_script.json", eval_script()), ("modifier_script.json", modifier_script()),
                      ("student_script.json", student_script())]:
        (HERE / name).write_text(json.dumps(doc, indent=1) + "\n")
    (HERE / "dataset.jsonl").write_text(dataset())
    (HERE / "backends.json").write_text(json.dumps({
        "evaluated": {"kind": "mock", "model_name": "mock-eval", "script": "eval_script.json", "parallelism_limit": 4},
        "student": {"kind": "mock", "model_name": "mock-student", "script": "student_script.json"},
    }, indent=1) + "\n")
    mod = {"kind": "mock", "model_name": "mock-modifier", "script": "modifier_script.json"}
    (HERE / "modifiers.json").write_text(json.dumps({
        "paraphrase_backend": mod, "mistake_backend": mod, "counterfactual_backend": mod, "retry_budget": 2,
    }, indent=1) + "\n")


if __name__ == "__main__":
    main()
