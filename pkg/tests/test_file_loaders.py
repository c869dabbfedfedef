import pytest

from qsp_kmatrix.utils.file_loaders import SATAKE_CATALOG, load_catalog


def test_catalog_rows_are_strings():
    table = load_catalog()
    assert table.loc["A1_split", "c"] == "1:q^(-1)"
    assert table.loc["A1_s", "pairs"] == ""
    assert list(SATAKE_CATALOG.index) == list(table.index)


def test_missing_table_raises_import_error():
    with pytest.raises(ImportError):
        load_catalog("no_such_table.csv")
