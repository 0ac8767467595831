"""
Модуль экспорта рядов границ.

Поддерживаемые форматы:
- CSV (стабильная схема, 17 значащих цифр)
- Excel (xlsx)
"""

import csv
import io
from datetime import datetime
from typing import Sequence, Union

from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter

Row = dict[str, Union[int, float]]


def format_value(value: Union[int, float]) -> str:
    """Целые как есть, вещественные - repr-точность без потерь."""
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


class SeriesExporter:
    """Экспортёр таблиц по сканам."""

    # ============== CSV Export ==============

    @staticmethod
    def to_csv(rows: Sequence[Row], columns: Sequence[str]) -> str:
        """
        Экспорт в CSV строку с заголовком.

        Args:
            rows: строки таблицы (ключи - имена колонок)
            columns: порядок колонок

        Returns:
            CSV строка с окончаниями строк `\\n`
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row[column]) for column in columns])
        return buffer.getvalue()

    @staticmethod
    def to_csv_bytes(rows: Sequence[Row], columns: Sequence[str]) -> bytes:
        return SeriesExporter.to_csv(rows, columns).encode("utf-8")

    # ============== Excel Export ==============

    @staticmethod
    def to_excel(
        rows: Sequence[Row],
        columns: Sequence[str],
        title: str = "RMSE bounds",
    ) -> bytes:
        """
        Экспорт в Excel (xlsx).

        Args:
            rows: строки таблицы
            columns: порядок колонок
            title: заголовок листа

        Returns:
            Bytes содержимого xlsx файла
        """
        wb = Workbook()
        ws = wb.active
        ws.title = "Series"

        # Стили
        header_fill = PatternFill(start_color="4472C4", end_color="4472C4", fill_type="solid")
        header_font_white = Font(bold=True, size=11, color="FFFFFF")
        border = Border(
            left=Side(style="thin"),
            right=Side(style="thin"),
            top=Side(style="thin"),
            bottom=Side(style="thin"),
        )
        center_align = Alignment(horizontal="center", vertical="center")

        last_column = get_column_letter(len(columns))
        ws.merge_cells(f"A1:{last_column}1")
        ws["A1"] = title
        ws["A1"].font = Font(bold=True, size=14)
        ws["A1"].alignment = center_align

        ws.merge_cells(f"A2:{last_column}2")
        ws["A2"] = f"Generated: {datetime.now().strftime('%Y-%m-%d %H:%M')}"
        ws["A2"].alignment = center_align

        header_row = 4
        for col, header in enumerate(columns, 1):
            cell = ws.cell(row=header_row, column=col, value=header)
            cell.font = header_font_white
            cell.fill = header_fill
            cell.border = border
            cell.alignment = center_align

        for idx, row in enumerate(rows, 1):
            for col, column in enumerate(columns, 1):
                cell = ws.cell(row=header_row + idx, column=col, value=row[column])
                cell.border = border
                if column == "scan":
                    cell.alignment = center_align

        for col in range(1, len(columns) + 1):
            ws.column_dimensions[get_column_letter(col)].width = 18

        ws.freeze_panes = ws.cell(row=header_row + 1, column=1)

        output = io.BytesIO()
        wb.save(output)
        output.seek(0)
        return output.getvalue()
