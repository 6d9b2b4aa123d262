import json

import pandas as pd
import pytest

from dilators.collapse.construct import build_collapse, normal_collapse
from dilators.collapse.oracles import AssumeOracle
from dilators.core.combinators import Identity, SigmaOf, builtin_dilator
from dilators.core.validate import validate_predilator
from dilators.domain import Provenance
from dilators.errors import SpecFileError
from dilators.ordinals.cnf import Ordinal, as_base
from dilators.resemblance.structure import leq1_table, pattern_structure
from dilators.schemas import CombinatorSpec, TableSpec
from dilators.storage.spec_files import (
    dilator_to_spec,
    dump_spec,
    load_spec,
    parse_spec,
    resolve_dilator,
    save_spec,
    spec_to_dilator,
)
from dilators.storage.tables import (
    collapse_to_tsv,
    leq1_to_dot,
    leq1_to_tsv,
    parse_collapse_tsv,
    parse_fixture_tsv,
    parse_leq1_tsv,
    read_collapse_tsv,
    read_fixture_tsv,
    read_leq1_tsv,
    write_leq1_xlsx,
    write_text,
)
from dilators.terms.term import Representation, element_to_term
from tests.strategies import LAWFUL_DILATORS, bases


@pytest.fixture(scope="module")
def omega_table():
    return leq1_table(pattern_structure(builtin_dilator("none"), bases(0, 1, 2, "w", "w+1")))


class TestSpecFiles:
    @pytest.mark.parametrize("name", sorted(LAWFUL_DILATORS))
    def test_combinators(self, name):
        d = LAWFUL_DILATORS[name]
        spec = dilator_to_spec(d)
        assert isinstance(spec, CombinatorSpec)
        assert parse_spec(dump_spec(spec)) == spec
        assert spec_to_dilator(spec) == d

    def test_tables(self):
        spec = dilator_to_spec(SigmaOf(Identity()), bound=3)
        assert isinstance(spec, TableSpec)
        assert spec.name == "sigma:identity"
        t = spec_to_dilator(parse_spec(dump_spec(spec)))
        assert t.value(3) == Ordinal.of(6)
        assert validate_predilator(t, 3).passed
        assert dilator_to_spec(t) == spec

    def test_dump_is_json(self):
        data = json.loads(dump_spec(dilator_to_spec(builtin_dilator("sigma:const:w"))))
        assert data == {"kind": "combinator", "expr": {"op": "sigma", "args": [{"op": "const", "value": "w"}]}}

    def test_bad_specs(self):
        with pytest.raises(SpecFileError):
            parse_spec("{}")
        with pytest.raises(SpecFileError):
            parse_spec('{"kind": "combinator", "expr": {"op": "identity"}, "extra": 1}')
        with pytest.raises(SpecFileError):
            spec_to_dilator(parse_spec('{"kind": "combinator", "expr": {"op": "const", "value": "w^1"}}'))

    def test_bad_tables(self):
        spec = dilator_to_spec(Identity(), bound=2)
        missing = spec.model_copy(update={"supports": {k: v for k, v in spec.supports.items() if k != "1,0"}})
        with pytest.raises(SpecFileError):
            spec_to_dilator(missing)
        short = spec.model_copy(update={"values": ["1", "1"]})
        with pytest.raises(SpecFileError):
            spec_to_dilator(short)
        infinite = spec.model_copy(update={"values": ["1", "w", "3"]})
        with pytest.raises(SpecFileError):
            spec_to_dilator(infinite)

    def test_resolve(self, tmp_path):
        assert resolve_dilator("identity") == Identity()
        path = str(tmp_path / "sigma.json")
        save_spec(dilator_to_spec(SigmaOf(Identity()), bound=3), path)
        assert load_spec(path).kind == "table"
        assert resolve_dilator(path).value(2) == Ordinal.of(3)
        with pytest.raises(SpecFileError):
            resolve_dilator("bogus")
        with pytest.raises(SpecFileError):
            load_spec(str(tmp_path / "missing.json"))


class TestLeq1Tables:
    def test_tsv(self, omega_table, tmp_path):
        text = leq1_to_tsv(omega_table)
        assert text.startswith("# dilator: const:0\n# semantics: relativized\n# universe: 0,1,2,w,w+1\n# padding: 5\n")
        assert "w\tw+1\ttrue\n" in text
        path = str(tmp_path / "out" / "leq1.tsv")
        write_text(text, path)
        header, verdicts = read_leq1_tsv(path)
        assert header == omega_table.structure.header()
        assert verdicts == omega_table.verdicts

    def test_unwritable_paths(self, omega_table, tmp_path):
        blocked = tmp_path / "f.txt"
        blocked.write_text("")
        with pytest.raises(SpecFileError):
            write_text(leq1_to_tsv(omega_table), str(blocked / "leq1.tsv"))
        with pytest.raises(SpecFileError):
            write_leq1_xlsx(omega_table, str(blocked / "leq1.xlsx"))

    def test_bad_tsv(self):
        with pytest.raises(SpecFileError):
            parse_leq1_tsv("# dilator: none\nalpha\tbeta\tleq1\n")
        text = "# dilator: none\n# semantics: exact\n# universe: 0,1\nalpha\tbeta\tleq1\n0\t1\tmaybe\n"
        with pytest.raises(SpecFileError):
            parse_leq1_tsv(text)

    def test_dot(self, omega_table):
        dot = leq1_to_dot(omega_table)
        assert dot.startswith('digraph leq1 {\n  "0";\n')
        assert '  "w" -> "w+1";\n' in dot
        assert dot.count("->") == 1

    def test_xlsx(self, omega_table, tmp_path):
        path = str(tmp_path / "leq1.xlsx")
        write_leq1_xlsx(omega_table, path)
        sheets = pd.read_excel(path, sheet_name=None, dtype=str)
        assert set(sheets) == {"leq1", "structure"}
        assert list(sheets["leq1"].columns) == ["alpha", "beta", "leq1"]
        assert len(sheets["leq1"]) == len(omega_table.verdicts)
        assert "w+1" in set(sheets["leq1"]["beta"])


class TestCollapseTables:
    def test_round_trip(self, tmp_path):
        table = normal_collapse(Identity(), bases("w")[0], range(5))
        text = collapse_to_tsv(table)
        assert text.startswith("# dilator: identity\n# alpha: w\n# provenance: constructed-normal\nterm\tordinal\n")
        path = str(tmp_path / "collapse.tsv")
        write_text(text, path)
        back = read_collapse_tsv(path)
        assert back.entries == table.entries
        assert back.provenance is Provenance.constructed_normal
        assert collapse_to_tsv(back) == text

    def test_missing_witnesses(self):
        d = Identity()
        terms = [element_to_term(d, 3, s) for s in d.elements(3)]
        table = build_collapse(d, 3, AssumeOracle(False), terms)
        text = collapse_to_tsv(table)
        assert "(0 ; 0 ; 3)\t-\n" in text
        back = parse_collapse_tsv(text)
        assert all(v is None for v in back.entries.values())

    def test_header_names_the_dilator(self):
        body = "# alpha: 3\nterm\tordinal\n(0 ; 0 ; 3)\t1\n"
        with pytest.raises(SpecFileError):
            parse_collapse_tsv("# dilator: ./table.json\n" + body)
        table = parse_collapse_tsv("# dilator: ./table.json\n" + body, dilator=Identity())
        assert table.alpha == as_base(3)
        with pytest.raises(SpecFileError):
            parse_collapse_tsv("term\tordinal\n")
        with pytest.raises(SpecFileError):
            parse_collapse_tsv("# dilator: identity\n# alpha: 3\nterm\tordinal\n(0 ; 0 ; 4)\t1\n")


class TestFixtures:
    def test_pairs(self, tmp_path):
        path = str(tmp_path / "fixture.tsv")
        write_text("delta\trepresentation\n3\t(2 ; 2, 3)\nw\t(0 ; w)\n", path)
        assert read_fixture_tsv(path) == [
            (as_base(3), Representation.parse("(2 ; 2, 3)")),
            (bases("w")[0], Representation.parse("(0 ; w)")),
        ]

    def test_bad_fixtures(self):
        with pytest.raises(SpecFileError):
            parse_fixture_tsv("delta\tterm\n3\t(0 ; 3)\n")
        with pytest.raises(SpecFileError):
            parse_fixture_tsv("delta\trepresentation\n3\t(2 ; 3, 2)\n")
