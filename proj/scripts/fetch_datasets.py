#!/usr/bin/env python3
# Copyright 2026 The RMBoost Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Downloads the benchmark datasets and writes numeric CSVs.

Each output is data/<name>.csv with a header row, numeric features and a 0/1
label in the last column, matching the shapes in the library registry.

    python3 scripts/fetch_datasets.py                 # all datasets
    python3 scripts/fetch_datasets.py blood credit    # a subset
    python3 scripts/fetch_datasets.py --raw-dir dl/   # use files fetched by hand

With --raw-dir, the raw file for a dataset is looked up by the base name of
its URL (for example dl/transfusion.data) instead of being downloaded.
Raisin ships as an Excel sheet and needs openpyxl.
"""

import argparse
import csv
import io
import os
import statistics
import sys
import urllib.request
import zipfile

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"

SOURCES = {
    "diabetes": "https://raw.githubusercontent.com/jbrownlee/Datasets/master/pima-indians-diabetes.data.csv",
    "german_numer": "https://www.csie.ntu.edu.tw/~cjlin/libsvmtools/datasets/binary/german.numer",
    "credit": UCI + "/credit-screening/crx.data",
    "blood": UCI + "/blood-transfusion/transfusion.data",
    "titanic": "https://raw.githubusercontent.com/datasciencedojo/datasets/master/titanic.csv",
    "raisin": "https://archive.ics.uci.edu/static/public/850/raisin.zip",
    "qsar": UCI + "/00254/biodeg.csv",
    "climate": UCI + "/00252/pop_failures.dat",
}

SHAPES = {
    "diabetes": (768, 8), "german_numer": (1000, 24), "credit": (690, 15), "blood": (748, 4),
    "titanic": (891, 8), "raisin": (900, 7), "qsar": (1055, 41), "climate": (540, 18),
}


def fetch(name, raw_dir):
    url = SOURCES[name]
    if raw_dir:
        with open(os.path.join(raw_dir, os.path.basename(url)), "rb") as f:
            return f.read()
    with urllib.request.urlopen(url, timeout=60) as r:
        return r.read()


def text_rows(raw, delimiter=","):
    return [row for row in csv.reader(io.StringIO(raw.decode("utf-8")), delimiter=delimiter) if row]


def convert_diabetes(raw):
    rows = text_rows(raw)
    return [f"f{j}" for j in range(8)], [[float(v) for v in r[:8]] + [int(r[8])] for r in rows]


def convert_german(raw):
    # LIBSVM sparse format, labels +1/-1, 24 features indexed from 1.
    out = []
    for line in raw.decode("utf-8").splitlines():
        parts = line.split()
        if not parts:
            continue
        x = [0.0] * 24
        for item in parts[1:]:
            k, v = item.split(":")
            x[int(k) - 1] = float(v)
        out.append(x + [1 if float(parts[0]) > 0 else 0])
    return [f"f{j}" for j in range(24)], out


CREDIT_NUMERIC = {1, 2, 7, 10, 13, 14}


def convert_credit(raw):
    # Categorical columns are integer-coded by sorted level; missing values
    # ('?') take the column median (numeric) or most frequent level.
    rows = text_rows(raw)
    columns = list(zip(*[r[:15] for r in rows]))
    coded = []
    for j, col in enumerate(columns):
        present = [v for v in col if v != "?"]
        if j in CREDIT_NUMERIC:
            fill = statistics.median(float(v) for v in present)
            coded.append([float(v) if v != "?" else fill for v in col])
        else:
            levels = sorted(set(present))
            fill = max(levels, key=present.count)
            coded.append([float(levels.index(v if v != "?" else fill)) for v in col])
    labels = [1 if r[15] == "+" else 0 for r in rows]
    data = [list(x) + [y] for x, y in zip(zip(*coded), labels)]
    return [f"a{j + 1}" for j in range(15)], data


def convert_blood(raw):
    rows = text_rows(raw)[1:]
    header = ["recency", "frequency", "monetary", "time"]
    return header, [[float(v) for v in r[:4]] + [int(r[4])] for r in rows]


def convert_titanic(raw):
    sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
    import prepare_titanic
    return prepare_titanic.encode(list(csv.DictReader(io.StringIO(raw.decode("utf-8")))))


def convert_raisin(raw):
    import openpyxl  # only this dataset needs it
    with zipfile.ZipFile(io.BytesIO(raw)) as z:
        sheet_name = next(n for n in z.namelist() if n.endswith(".xlsx"))
        book = openpyxl.load_workbook(io.BytesIO(z.read(sheet_name)), read_only=True)
    rows = list(book.active.iter_rows(values_only=True))
    header = [str(h) for h in rows[0][:7]]
    return header, [[float(v) for v in r[:7]] + [1 if r[7] == "Kecimen" else 0] for r in rows[1:] if r[0] is not None]


def convert_qsar(raw):
    rows = text_rows(raw, delimiter=";")
    return [f"d{j + 1}" for j in range(41)], [[float(v) for v in r[:41]] + [1 if r[41] == "RB" else 0] for r in rows]


def convert_climate(raw):
    lines = raw.decode("utf-8").splitlines()
    header = lines[0].split()[2:20]
    data = []
    for line in lines[1:]:
        parts = line.split()
        if parts:
            data.append([float(v) for v in parts[2:20]] + [int(parts[20])])
    return header, data


CONVERTERS = {
    "diabetes": convert_diabetes, "german_numer": convert_german, "credit": convert_credit,
    "blood": convert_blood, "titanic": convert_titanic, "raisin": convert_raisin,
    "qsar": convert_qsar, "climate": convert_climate,
}


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(list(header) + ["label"])
        for r in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in r])


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("names", nargs="*", help="subset of: " + ", ".join(sorted(SOURCES)))
    parser.add_argument("--out-dir", default="data")
    parser.add_argument("--raw-dir", default="")
    args = parser.parse_args()
    unknown = sorted(set(args.names) - set(SOURCES))
    if unknown:
        parser.error("unknown dataset(s): " + ", ".join(unknown))
    os.makedirs(args.out_dir, exist_ok=True)
    failed = 0
    for name in args.names or sorted(SOURCES):
        try:
            header, rows = CONVERTERS[name](fetch(name, args.raw_dir))
            n, d = SHAPES[name]
            if len(rows) != n or len(header) != d:
                raise ValueError(f"got {len(rows)} x {len(header)}, expected {n} x {d}")
            write_csv(os.path.join(args.out_dir, name + ".csv"), header, rows)
            print(f"{name}: {n} x {d}")
        except Exception as e:  # report every dataset, then fail
            print(f"{name}: FAILED ({e})", file=sys.stderr)
            failed += 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
