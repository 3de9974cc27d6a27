"""
Export utilities for verification certificates and multiplicity tables.
Handles JSON, PDF and spreadsheet output.
"""

import csv
import json
import logging
import os

from config import APP_TITLE, APP_VERSION, EXPORT_DIR

logger = logging.getLogger(__name__)

# Import optional libraries with error handling
try:
    import pandas as pd
except ImportError:
    pd = None
    logger.warning("pandas module not available, spreadsheet export will fall back to CSV")

try:
    import xlsxwriter
except ImportError:
    xlsxwriter = None
    logger.warning("xlsxwriter module not available, spreadsheet export will fall back to CSV")

try:
    from reportlab.lib import colors
    from reportlab.lib.pagesizes import A4
    from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
    from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

    REPORTLAB_AVAILABLE = True
except ImportError:
    REPORTLAB_AVAILABLE = False
    logger.warning("reportlab modules not available, PDF certificates will be skipped")


def ensure_export_dir(directory=None):
    """Create the export directory if it doesn't exist and return it."""
    directory = directory or EXPORT_DIR
    os.makedirs(directory, exist_ok=True)
    return directory


def _path(filename, extension, directory=None):
    if not filename.endswith(extension):
        filename += extension
    return os.path.join(ensure_export_dir(directory), filename)


def certificate_rows(certificate):
    """Flatten a certificate into one row per statement."""
    rows = []
    for suite, results in certificate["suites"].items():
        for result in results:
            rows.append(
                {
                    "suite": suite,
                    "statement": result["statement"],
                    "status": result["status"],
                    "detail": result.get("detail", ""),
                }
            )
    return rows


def export_json(data, filename, directory=None):
    """
    Write a report as deterministic JSON.

    Args:
        data (dict): JSON-compatible report
        filename (str): Output filename (without extension)
        directory (str, optional): Overrides EXPORT_DIR

    Returns:
        str: Path to the created file
    """
    filepath = _path(filename, ".json", directory)
    with open(filepath, "w", encoding="utf-8") as handle:
        json.dump(data, handle, sort_keys=True, indent=2, ensure_ascii=False)
        handle.write("\n")
    return filepath


def _write_csv(rows, filepath, headers=None):
    with open(filepath, "w", newline="", encoding="utf-8") as handle:
        if rows and isinstance(rows[0], dict):
            writer = csv.DictWriter(handle, fieldnames=headers or list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        else:
            writer = csv.writer(handle)
            if headers:
                writer.writerow(headers)
            writer.writerows(rows)
    return filepath


def export_to_excel(rows, filename, sheet_name="Data", headers=None, directory=None):
    """
    Export rows to an xlsx file, or to CSV when the spreadsheet stack is missing.

    Args:
        rows (list): List of dictionaries or list of lists
        filename (str): Output filename (without extension)
        sheet_name (str, optional): Worksheet name
        headers (list, optional): Column headers

    Returns:
        str: Path to the created file
    """
    filepath = _path(filename, ".xlsx", directory)
    csv_path = filepath[: -len(".xlsx")] + ".csv"

    if pd is None or xlsxwriter is None:
        logger.warning("Exported %s as CSV instead of xlsx due to missing dependencies", csv_path)
        return _write_csv(rows, csv_path, headers)

    try:
        frame = pd.DataFrame(rows)
        if headers:
            if rows and isinstance(rows[0], dict):
                frame = frame.reindex(columns=headers)
            else:
                frame.columns = headers
        return export_frame(frame, filepath, sheet_name, index=False)
    except (OSError, ValueError) as e:
        logger.warning("Error exporting to xlsx (%s), falling back to CSV", e)
        return _write_csv(rows, csv_path, headers)


def export_frame(frame, filepath, sheet_name="Data", index=True):
    """Write a DataFrame with a formatted header row, xlsxwriter engine."""
    with pd.ExcelWriter(filepath, engine="xlsxwriter") as writer:
        frame.to_excel(writer, sheet_name=sheet_name, index=index)
        workbook = writer.book
        worksheet = writer.sheets[sheet_name]
        header_format = workbook.add_format(
            {"bold": True, "text_wrap": True, "valign": "top", "bg_color": "#D7E4BC", "border": 1}
        )
        offset = frame.index.nlevels if index else 0
        for col_num, value in enumerate(frame.columns.values):
            worksheet.write(0, col_num + offset, str(value), header_format)
        for i, column in enumerate(frame.columns):
            width = max(frame[column].astype(str).str.len().max() if len(frame) else 0, len(str(column))) + 2
            worksheet.set_column(i + offset, i + offset, width)
    return filepath


def export_table(table, filename, refined=False, directory=None):
    """
    Export a multiplicity table, one row per |I| (or I) and one column per twist.

    Returns:
        str: Path to the created xlsx (or CSV) file
    """
    frame = table.to_frame(refined)
    filepath = _path(filename, ".xlsx", directory)
    if xlsxwriter is None:
        csv_path = filepath[: -len(".xlsx")] + ".csv"
        frame.to_csv(csv_path)
        logger.warning("Exported %s as CSV instead of xlsx due to missing xlsxwriter", csv_path)
        return csv_path
    return export_frame(frame, filepath, sheet_name="gr")


def export_certificate_pdf(certificate, filename, directory=None):
    """
    Render a verification certificate as a PDF table.

    Args:
        certificate (dict): Certificate as produced by ReportController.to_dict
        filename (str): Output filename (without extension)

    Returns:
        str: Path to the created file, or None when reportlab is missing
    """
    if not REPORTLAB_AVAILABLE:
        logger.warning("Skipping PDF certificate %s: reportlab is not installed", filename)
        return None

    filepath = _path(filename, ".pdf", directory)
    doc = SimpleDocTemplate(filepath, pagesize=A4, rightMargin=54, leftMargin=54, topMargin=54, bottomMargin=54)
    styles = getSampleStyleSheet()
    note_style = ParagraphStyle("Note", parent=styles["Normal"], fontSize=9, textColor=colors.gray)

    summary = "all statements hold" if certificate["passed"] else f"{certificate['failed']} statement(s) failed"
    elements = [
        Paragraph(f"{APP_TITLE} certificate, n = {certificate['n']}", styles["Heading1"]),
        Paragraph(f"ring {certificate['ring']}, mode {certificate['mode']}: {summary}", styles["Normal"]),
        Paragraph(f"{APP_TITLE} {APP_VERSION}", note_style),
        Spacer(1, 12),
    ]

    rows = certificate_rows(certificate)
    data = [["Suite", "Statement", "Status"]] + [[r["suite"], r["statement"], r["status"]] for r in rows]
    table = Table(data, repeatRows=1, colWidths=[80, 300, 60])
    style = [
        ("BACKGROUND", (0, 0), (-1, 0), colors.HexColor("#D7E4BC")),
        ("FONTNAME", (0, 0), (-1, 0), "Helvetica-Bold"),
        ("FONTSIZE", (0, 0), (-1, -1), 8),
        ("GRID", (0, 0), (-1, -1), 0.25, colors.grey),
        ("VALIGN", (0, 0), (-1, -1), "TOP"),
    ]
    for index, row in enumerate(rows, start=1):
        if row["status"] != "pass":
            style.append(("TEXTCOLOR", (2, index), (2, index), colors.red))
    table.setStyle(TableStyle(style))
    elements.append(table)

    doc.build(elements)
    return filepath
