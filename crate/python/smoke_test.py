"""Smoke test for the block_functors_py extension module."""

import json

import block_functors_py as bf


def main():
    d8 = bf.FamilyGroup("dihedral:3")
    assert d8.order == 8 and d8.subgroup_count == 10
    assert bf.FamilyGroup("quaternion:3").automorphism_count == 24
    assert any(row["label"] == "W1_2" for row in d8.taxonomy())

    fs = bf.FusionSystem("quaternion:4:F11")
    assert fs.num_simple_modules == 3
    assert any(c["out_f_order"] == 6 for c in fs.classes())

    table = fs.decompose()
    assert table.trivial_multiplicity() == 3
    again = bf.DecompositionTable.from_json(table.to_json())
    assert again == table and json.loads(again.to_json())["fusion"] == "F11"

    same, diff = bf.equivalent("semidihedral:5:F01", "semidihedral:5:F10")
    assert not same and diff is not None
    assert bf.equivalent("dihedral:4:F01", "dihedral:4:F01") == (True, None)

    try:
        bf.decompose_block("quaternion:3:F00")
    except ValueError:
        pass
    else:
        raise AssertionError("Q8 should be rejected")

    assert bf.verify(3)
    print(f"ok: {len(table)} simple functors in {table.spec}")


if __name__ == "__main__":
    main()
