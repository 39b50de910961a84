import * as fs from 'fs';
import * as os from 'os';
import * as path from 'path';
import { describe, expect, it } from 'vitest';

import { readEdf, scaleToMicrovolts } from '../src/edf.js';

function field(value: string | number, width: number): Buffer {
    return Buffer.from(String(value).padEnd(width), 'ascii');
}

/** Hand-assembled one-signal EDF: 2 records x 4 samples @ 4 Hz. */
function miniEdf(): Buffer {
    const header = Buffer.concat([
        field('0', 8),
        field('patient', 80),
        field('recording', 80),
        field('01.01.20', 8),
        field('00.00.00', 8),
        field(512, 8),
        field('', 44),
        field(2, 8),
        field(1, 8),
        field(1, 4),
        // signal header, one signal
        field('chanA', 16),
        field('t', 80),
        field('uV', 8),
        field(-100, 8),
        field(100, 8),
        field(-32768, 8),
        field(32767, 8),
        field('', 80),
        field(4, 8),
        field('', 32),
    ]);
    const samples = Buffer.alloc(2 * 4 * 2);
    const digital = [-32768, 0, 16384, 32767, -16384, 1, 2, 3];
    digital.forEach((d, i) => samples.writeInt16LE(d, i * 2));
    return Buffer.concat([header, samples]);
}

describe('readEdf', () => {
    it('decodes scaled physical values', () => {
        const tmp = path.join(os.tmpdir(), `mini-${Date.now()}.edf`);
        fs.writeFileSync(tmp, miniEdf());
        const edf = readEdf(tmp);
        fs.rmSync(tmp);

        expect(edf.signals).toHaveLength(1);
        expect(edf.signals[0].label).toBe('chanA');
        expect(edf.samples[0]).toHaveLength(8);
        const gain = 200 / 65535;
        expect(edf.samples[0][0]).toBeCloseTo(-100, 12);
        expect(edf.samples[0][1]).toBeCloseTo(-100 + 32768 * gain, 12);
        expect(edf.samples[0][3]).toBeCloseTo(100, 12);
    });

    it('rejects truncated files', () => {
        const tmp = path.join(os.tmpdir(), `trunc-${Date.now()}.edf`);
        fs.writeFileSync(tmp, miniEdf().subarray(0, 520));
        expect(() => readEdf(tmp)).toThrow(/truncated/);
        fs.rmSync(tmp);
    });
});

describe('scaleToMicrovolts', () => {
    it('maps the common dimensions', () => {
        expect(scaleToMicrovolts('uV')).toBe(1);
        expect(scaleToMicrovolts('mV')).toBe(1000);
        expect(scaleToMicrovolts('V')).toBe(1e6);
    });

    it('rejects unknown dimensions', () => {
        expect(() => scaleToMicrovolts('furlongs')).toThrow(/unsupported/);
    });
});
