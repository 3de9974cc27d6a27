import json
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import pytest

from controllers.report_controller import ReportController
from models.filtration import MultiplicityTable
from models.scalar import scalar_ring
from utils import export_utils
from utils.export_utils import certificate_rows, export_json, export_table, export_to_excel


@pytest.fixture
def certificate():
    controller = ReportController(scalar_ring(2))
    return controller, controller.verify(["scalars", "strata"])


def test_certificate_json(tmp_path, certificate):
    controller, cert = certificate
    data = controller.certificate_to_dict(cert)
    path = export_json(data, "cert", directory=str(tmp_path))
    assert path.endswith("cert.json")
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    assert json.loads(text) == data
    assert text.endswith("\n")
    # deterministic: a second write is byte-identical
    again = export_json(data, "cert.json", directory=str(tmp_path))
    with open(again, encoding="utf-8") as handle:
        assert handle.read() == text


def test_certificate_rows(certificate):
    controller, cert = certificate
    rows = certificate_rows(controller.certificate_to_dict(cert))
    assert {row["suite"] for row in rows} == {"scalars", "strata"}
    assert all(row["status"] == "pass" for row in rows)


def test_export_certificate_writes_json_and_pdf(tmp_path, certificate):
    controller, cert = certificate
    paths = controller.export_certificate(cert, directory=str(tmp_path))
    assert os.path.basename(paths[0]) == "certificate_n2.json"
    if export_utils.REPORTLAB_AVAILABLE:
        assert paths[1].endswith(".pdf")
        assert os.path.getsize(paths[1]) > 0
    else:
        assert len(paths) == 1


def test_certificate_pdf(tmp_path, certificate):
    pytest.importorskip("reportlab")
    controller, cert = certificate
    path = export_utils.export_certificate_pdf(controller.certificate_to_dict(cert), "c", str(tmp_path))
    with open(path, "rb") as handle:
        assert handle.read(4) == b"%PDF"


def test_table_export(tmp_path):
    table = MultiplicityTable({(0, -1): 1, (1, 0): 2, (0, 1): 1})
    path = export_table(table, "gr_n2", directory=str(tmp_path))
    assert os.path.exists(path)
    if path.endswith(".xlsx"):
        openpyxl = pytest.importorskip("openpyxl")
        sheet = openpyxl.load_workbook(path).active
        values = [[cell.value for cell in row] for row in sheet.iter_rows()]
        assert values[0][1:] == ["-1", "0", "1"]
        assert [row[0] for row in values[-2:]] == [1, 0]


def test_table_export_without_xlsxwriter(tmp_path, monkeypatch):
    monkeypatch.setattr(export_utils, "xlsxwriter", None)
    table = MultiplicityTable({(0, 0): 1})
    path = export_table(table, "gr_n1", directory=str(tmp_path))
    assert path.endswith(".csv")
    with open(path, encoding="utf-8") as handle:
        assert handle.read().splitlines()[0].startswith("|I|")


def test_rows_fall_back_to_csv(tmp_path, monkeypatch):
    monkeypatch.setattr(export_utils, "pd", None)
    rows = [{"suite": "weyl", "statement": "weyl:omega-order", "status": "pass"}]
    path = export_to_excel(rows, "rows", directory=str(tmp_path))
    assert path.endswith("rows.csv")
    with open(path, encoding="utf-8") as handle:
        assert handle.read().splitlines() == ["suite,statement,status", "weyl,weyl:omega-order,pass"]


def test_grm_tables_export(tmp_path):
    controller = ReportController(scalar_ring(2))
    paths = controller.export_tables(directory=str(tmp_path))
    assert [os.path.basename(p).split(".")[0] for p in paths] == ["gr_n2", "psi_n2"]


def test_openpyxl_is_a_test_dependency():
    manifest = os.path.join(os.path.dirname(os.path.dirname(__file__)), "pyproject.toml")
    with open(manifest, "rb") as handle:
        project = tomllib.load(handle)["project"]
    runtime = {spec.split(">")[0] for spec in project["dependencies"]}
    dev = {spec.split(">")[0] for spec in project["optional-dependencies"]["dev"]}
    assert "openpyxl" not in runtime
    assert "openpyxl" in dev
