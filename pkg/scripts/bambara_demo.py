"""Run the Bambara groundnut rules over the fixture fact base and print the results."""

from pathlib import Path

from fuzzytemporal.config import Config
from fuzzytemporal.kb import load_facts
from fuzzytemporal.rules import forward_chain, parse_query, parse_rules, run_query
from fuzzytemporal.rules.engine import describe

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main():
    kb = load_facts((FIXTURES / "bambara_facts.json").read_text())
    rules = parse_rules((FIXTURES / "bambara_rules.swrl").read_text(), source="bambara_rules.swrl")
    config = Config.load(FIXTURES / "bambara_config.json")

    out, report = forward_chain(kb, rules, config)
    print(f"{len(rules)} rules, {report.iterations} passes, {len(report.derived)} new facts")
    for iteration, item in report.derived:
        print(f"  pass {iteration}  {item.rule:20s} {describe(item)}")

    query = parse_query("GerminationPeriod(?x, ?ok) -> select(?x, ?ok)")
    print()
    print(run_query(out, query, config).to_tsv(), end="")


if __name__ == "__main__":
    main()
