import { execFileSync } from 'child_process';
import * as fs from 'fs';
import * as os from 'os';
import * as path from 'path';
import { fileURLToPath } from 'url';
import { afterAll, describe, expect, it } from 'vitest';

import { convert } from '../src/convert.js';
import { sampleRestEvents } from '../src/tasks.js';
import { validateContainerDir } from '../src/validate.js';

const HERE = path.dirname(fileURLToPath(import.meta.url));
const FIXTURES = path.join(HERE, '..', 'fixtures');
const REPO_ROOT = path.join(HERE, '..', '..');

const tmpRoots: string[] = [];
function tmpDir(tag: string): string {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), `conv-${tag}-`));
    tmpRoots.push(dir);
    return dir;
}

afterAll(() => {
    for (const dir of tmpRoots) fs.rmSync(dir, { recursive: true, force: true });
});

function readExpected(name: string) {
    const meta = JSON.parse(
        fs.readFileSync(path.join(FIXTURES, 'expected', `${name}.json`), 'utf-8'),
    );
    const data = fs.readFileSync(path.join(FIXTURES, 'expected', `${name}.data.bin`));
    return { meta, data };
}

/** The decoding pipeline's own validator is the authoritative check. */
function pythonValidate(containerDir: string): string {
    try {
        return execFileSync(
            'python3',
            ['-m', 'ieegdec.cli', 'validate', '--in', containerDir],
            {
                env: { ...process.env, PYTHONPATH: path.join(REPO_ROOT, 'src') },
                encoding: 'utf-8',
            },
        );
    } catch (err: any) {
        throw new Error(`python validate failed: ${err.stdout ?? ''}${err.stderr ?? ''}`);
    }
}

describe.each([
    ['audio_visual', 'sub-01', { singing: 0, speech: 10, music: 10 }],
    ['music_reconstruction', 'sub-01', { singing: 4, music: 16 }],
    ['ajile12', 'sub-01', { move: 6, rest: 9 }],
] as const)('convert %s', (kind, participant, counts) => {
    it('produces a valid container with float32-exact samples', async () => {
        const out = tmpDir(kind);
        const outcomes = await convert({ kind, root: path.join(FIXTURES, kind) }, out);
        expect(outcomes).toHaveLength(1);
        expect(outcomes[0].error).toBeNull();
        const containerDir = outcomes[0].outDir!;

        expect(validateContainerDir(containerDir)).toEqual([]);
        expect(pythonValidate(containerDir)).toMatch(/0 violations/);

        const { meta, data } = readExpected(`${kind}-${participant}`);
        const written = fs.readFileSync(path.join(containerDir, 'data.bin'));
        expect(written.length).toBe(data.length);
        expect(written.equals(data)).toBe(true); // float32-exact round trip

        const manifest = JSON.parse(
            fs.readFileSync(path.join(containerDir, 'manifest.json'), 'utf-8'),
        );
        expect(manifest.fs).toBe(meta.fs);
        expect(manifest.channels.map((c: any) => c.name)).toEqual(meta.channels);
        expect(manifest.channels.map((c: any) => c.region)).toEqual(meta.regions);

        const events = fs
            .readFileSync(path.join(containerDir, 'events.csv'), 'utf-8')
            .trim()
            .split('\n')
            .slice(1)
            .map((l) => l.split(','));
        expect(events.map(([o, l]) => [Number(o), l])).toEqual(meta.events);
        const byLabel: Record<string, number> = {};
        for (const [, label] of events) byLabel[label.toLowerCase()] = (byLabel[label.toLowerCase()] ?? 0) + 1;
        for (const [label, n] of Object.entries(counts)) {
            if (n > 0) expect(byLabel[label]).toBe(n);
        }
    });
});

describe('layout handling', () => {
    it('audio_visual fixture has no electrode localization: regions all null', async () => {
        const out = tmpDir('noregion');
        const outcomes = await convert({ kind: 'audio_visual', root: path.join(FIXTURES, 'audio_visual') }, out);
        const manifest = JSON.parse(
            fs.readFileSync(path.join(outcomes[0].outDir!, 'manifest.json'), 'utf-8'),
        );
        expect(manifest.channels.every((c: any) => c.region === null)).toBe(true);
    });

    it('isolates per-participant failures', async () => {
        const root = tmpDir('mixed');
        fs.cpSync(path.join(FIXTURES, 'audio_visual', 'sub-01'), path.join(root, 'sub-01'), {
            recursive: true,
        });
        fs.mkdirSync(path.join(root, 'sub-99', 'ieeg'), { recursive: true });
        fs.writeFileSync(path.join(root, 'sub-99', 'ieeg', 'junk.txt'), 'not a dataset');
        const out = tmpDir('mixed-out');
        const outcomes = await convert({ kind: 'audio_visual', root }, out);
        expect(outcomes).toHaveLength(2);
        const good = outcomes.find((o) => o.participant === 'sub-01')!;
        const bad = outcomes.find((o) => o.participant === 'sub-99')!;
        expect(good.error).toBeNull();
        expect(validateContainerDir(good.outDir!)).toEqual([]);
        expect(bad.error).toMatch(/_ieeg.edf/);
    });

    it('reports unsupported layouts with the offending path', async () => {
        const root = tmpDir('empty');
        await expect(convert({ kind: 'music_reconstruction', root }, tmpDir('x'))).rejects.toThrow(
            /no participants/,
        );
    });
});

describe('ajile12 rest sampling', () => {
    const events: Array<[number, string]> = [];
    for (let i = 0; i < 20; i++) {
        events.push([i * 100, i % 4 === 0 ? 'Move' : 'Rest']); // 5 move, 15 rest
    }

    it('caps rest epochs deterministically', () => {
        const a = sampleRestEvents(events, 5, 42);
        const b = sampleRestEvents(events, 5, 42);
        expect(a).toEqual(b);
        expect(a.filter(([, l]) => l === 'Rest')).toHaveLength(5);
        expect(a.filter(([, l]) => l === 'Move')).toHaveLength(5);
        // still sorted by onset
        const onsets = a.map(([o]) => o);
        expect([...onsets].sort((x, y) => x - y)).toEqual(onsets);
    });

    it('different seeds pick different epochs', () => {
        const a = sampleRestEvents(events, 5, 1);
        const b = sampleRestEvents(events, 5, 2);
        expect(a).not.toEqual(b);
    });

    it('applies through the converter', async () => {
        const out = tmpDir('rest');
        const outcomes = await convert(
            { kind: 'ajile12', root: path.join(FIXTURES, 'ajile12'), restLimit: 6, restSeed: 7 },
            out,
        );
        const events = fs
            .readFileSync(path.join(outcomes[0].outDir!, 'events.csv'), 'utf-8')
            .trim()
            .split('\n')
            .slice(1);
        expect(events.filter((l) => l.endsWith(',Rest'))).toHaveLength(6);
        expect(events.filter((l) => l.endsWith(',Move'))).toHaveLength(6);
        expect(validateContainerDir(outcomes[0].outDir!)).toEqual([]);
    });
});
