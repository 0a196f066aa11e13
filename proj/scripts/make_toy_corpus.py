#!/usr/bin/env python3
"""Writes the synthetic toy corpus and demo account files under data/.

Everything here is invented; no real leaked passwords are used. Output is a
pure function of --seed.
"""
import argparse
import json
import random
from pathlib import Path

WORDS = """
love angel baby sunshine princess dragon monkey shadow master summer winter
autumn spring flower butterfly tiger lion eagle falcon hunter soccer football
baseball hockey basket guitar music dance happy lucky star moon rocket planet
galaxy ocean river forest garden coffee cookie candy sugar honey cherry apple
banana orange lemon mango peach silver golden purple yellow green orange black
white pepper ginger marley buddy charlie bailey max rocky duke bella daisy lucy
molly sadie maggie sophie chloe lily zoe emma olivia ava mia isabella michael
daniel david james john robert william joseph thomas chris matthew andrew joshua
ryan justin brandon tyler kevin jason jessica ashley amanda sarah jennifer
nicole stephanie heather melissa rachel laura hannah megan lauren samantha
kitten puppy pirate ninja wizard knight castle kingdom legend phoenix thunder
storm lightning blizzard tornado volcano diamond crystal ruby emerald sapphire
pearl jasmine rose violet tulip orchid maple willow cedar pine oak birch ranger
cowboy rebel outlaw soldier pilot sailor captain doctor teacher student summer
holiday weekend friday sunday monday freedom liberty justice secret mystery
magic spirit heaven paradise forever always trust faith hope dream believe
""".split()

KEYBOARD_WALKS = ["qwerty", "asdfgh", "zxcvbn", "qwertyui", "asdfghjk", "1qaz2wsx", "qazwsx", "poiuyt", "mnbvcx"]
SYMBOLS = "!@#$%&*?."
LEET = str.maketrans({"a": "@", "e": "3", "i": "1", "o": "0", "s": "$"})
FIRST = ["alex", "sam", "jordan", "casey", "riley", "taylor", "morgan", "jamie", "drew", "quinn",
         "avery", "parker", "reese", "rowan", "sasha", "kai", "robin", "eden", "noel", "skyler"]
LAST = ["smith", "jones", "brown", "garcia", "miller", "davis", "lopez", "wilson", "moore", "clark",
        "lewis", "young", "walker", "hall", "allen", "king", "wright", "scott", "green", "baker"]


def year(rng):
    return str(rng.randint(1960, 2024))


def digits(rng):
    r = rng.random()
    if r < 0.35:
        return year(rng)
    if r < 0.6:
        return f"{rng.randint(0, 99):02d}"
    if r < 0.75:
        return str(rng.randint(0, 9))
    if r < 0.9:
        return rng.choice(["123", "1234", "12345", "111", "007", "69", "4ever"])
    return str(rng.randint(100, 9999))


def fresh(rng):
    w = rng.choice(WORDS)
    r = rng.random()
    if r < 0.30:
        return w + digits(rng)
    if r < 0.45:
        return w + digits(rng) + rng.choice(SYMBOLS)
    if r < 0.60:
        return w.capitalize() + digits(rng)
    if r < 0.66:
        return w.capitalize() + digits(rng) + rng.choice(SYMBOLS)
    if r < 0.72:
        return "".join(rng.choice("0123456789") for _ in range(rng.randint(6, 10)))
    if r < 0.80:
        return w + rng.choice(WORDS)
    if r < 0.85:
        return rng.choice(KEYBOARD_WALKS) + digits(rng)
    if r < 0.92:
        return w.translate(LEET) + digits(rng)
    if r < 0.96:
        return w
    alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789" + SYMBOLS
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(8, 12)))


def corpus(rng, n):
    popular = []
    while len(popular) < 200:
        p = fresh(rng)
        if p not in popular:
            popular.append(p)
    weights = [1.0 / (i + 1) for i in range(len(popular))]
    out = []
    for _ in range(n):
        out.append(rng.choices(popular, weights)[0] if rng.random() < 0.2 else fresh(rng))
    return out


def pii_password(rng, pii):
    token = rng.choice(pii["name_tokens"] + [pii["username"]])
    tail = str(pii["birth_year"]) if rng.random() < 0.5 else str(pii["birth_year"])[2:]
    pw = token + tail
    if rng.random() < 0.4:
        pw = pw.capitalize()
    if rng.random() < 0.3:
        pw += rng.choice(SYMBOLS)
    return pw


def demo_accounts(rng, n):
    rows = []
    for i in range(n):
        first, last = rng.choice(FIRST), rng.choice(LAST)
        pii = {
            "username": f"{first}{last[0]}{rng.randint(1, 99)}",
            "birth_year": rng.randint(1960, 2005),
            "name_tokens": [first, last],
            "keyboard_layout": "qwerty",
        }
        pw = pii_password(rng, pii) if rng.random() < 0.5 else fresh(rng)
        while len(pw) < 8:
            pw += rng.choice("0123456789")
        rows.append({"uid": f"user{i + 1:03d}", "password": pw, "pii": pii})
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=20240501)
    ap.add_argument("--size", type=int, default=5000)
    ap.add_argument("--out-dir", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    lines = corpus(rng, args.size)
    (args.out_dir / "toy_corpus.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    with open(args.out_dir / "demo_accounts.jsonl", "w", encoding="utf-8") as f:
        for row in demo_accounts(rng, 40):
            f.write(json.dumps(row, separators=(",", ":")) + "\n")


if __name__ == "__main__":
    main()
