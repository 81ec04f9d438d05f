export type FigureKind = "fig1" | "fig2";

export interface Point {
  k: number;
  /** Numeric value used for scaling. */
  y: number;
  /** Verbatim CSV cell, preserved so renders carry the exact upstream text. */
  raw: string;
}

export interface Series {
  name: string;
  points: Point[];
}

export interface FigureData {
  kind: FigureKind;
  series: Series[];
}

export const HEADERS: Record<FigureKind, string> = {
  fig1: "k,log2_f,log2_fc",
  fig2: "k,U_k,Qmax",
};

export class CsvFormatError extends Error {}

/**
 * Parse one of the two figure CSVs. Empty cells (a gap undefined at that k)
 * are skipped, so a series may start later than k = 1.
 */
export function parseFigureCsv(kind: FigureKind, text: string): FigureData {
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  if (lines.length === 0) {
    throw new CsvFormatError("empty CSV input");
  }
  const expected = HEADERS[kind];
  if (lines[0] !== expected) {
    throw new CsvFormatError(
      `header mismatch for ${kind}: expected "${expected}", found "${lines[0]}"`,
    );
  }
  const names = expected.split(",").slice(1);
  const series: Series[] = names.map((name) => ({ name, points: [] }));
  for (const [i, line] of lines.slice(1).entries()) {
    const cells = line.split(",");
    if (cells.length !== names.length + 1) {
      throw new CsvFormatError(`row ${i + 2}: expected ${names.length + 1} cells, found ${cells.length}`);
    }
    const k = Number(cells[0]);
    if (!Number.isInteger(k)) {
      throw new CsvFormatError(`row ${i + 2}: k must be an integer, found "${cells[0]}"`);
    }
    for (let c = 0; c < names.length; c++) {
      const raw = cells[c + 1];
      if (raw === "") continue;
      const y = Number(raw);
      if (!Number.isFinite(raw === "" ? NaN : y)) {
        throw new CsvFormatError(`row ${i + 2}: bad numeric cell "${raw}"`);
      }
      series[c].points.push({ k, y, raw });
    }
  }
  return { kind, series };
}
