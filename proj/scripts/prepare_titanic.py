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

"""Flattens the Titanic passenger table (Kaggle train.csv) to 8 numeric features.

    python3 scripts/prepare_titanic.py train.csv data/titanic.csv

Features, in order:
  pclass     1, 2, 3
  sex        0 male, 1 female
  age        years; missing ages take the median of the known ages
  sibsp      siblings and spouses aboard
  parch      parents and children aboard
  fare       ticket fare; missing fares take the median fare
  embarked   0 S, 1 C, 2 Q; missing ports take S, the most frequent
  has_cabin  1 when a cabin number is recorded
Label: Survived (0/1). Name, Ticket and PassengerId are dropped.
"""

import csv
import statistics
import sys

HEADER = ["pclass", "sex", "age", "sibsp", "parch", "fare", "embarked", "has_cabin"]
PORTS = {"S": 0.0, "C": 1.0, "Q": 2.0}


def _median(rows, key):
    return statistics.median(float(r[key]) for r in rows if r[key].strip())


def encode(rows):
    age_fill, fare_fill = _median(rows, "Age"), _median(rows, "Fare")
    out = []
    for r in rows:
        out.append([
            float(r["Pclass"]),
            1.0 if r["Sex"].strip() == "female" else 0.0,
            float(r["Age"]) if r["Age"].strip() else age_fill,
            float(r["SibSp"]),
            float(r["Parch"]),
            float(r["Fare"]) if r["Fare"].strip() else fare_fill,
            PORTS.get(r["Embarked"].strip(), 0.0),
            1.0 if r["Cabin"].strip() else 0.0,
            int(r["Survived"]),
        ])
    return HEADER, out


def main(argv):
    if len(argv) != 3:
        print(__doc__, file=sys.stderr)
        return 1
    with open(argv[1], newline="") as f:
        header, rows = encode(list(csv.DictReader(f)))
    with open(argv[2], "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header + ["label"])
        w.writerows(rows)
    print(f"{len(rows)} x {len(header)}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
