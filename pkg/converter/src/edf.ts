/**
 * Minimal EDF reader: the subset BIDS-style iEEG sources need.
 *
 * Supports contiguous int16 records with per-signal physical/digital
 * scaling. Annotations channels and discontinuous (EDF+D) files are out
 * of scope; samples decode as
 *     physical = physMin + (digital - digMin) * (physMax - physMin) / (digMax - digMin)
 */
import * as fs from 'fs';

export interface EdfSignal {
    label: string;
    physicalDimension: string;
    physicalMin: number;
    physicalMax: number;
    digitalMin: number;
    digitalMax: number;
    samplesPerRecord: number;
}

export interface EdfFile {
    recordCount: number;
    recordSeconds: number;
    signals: EdfSignal[];
    /** per-signal physical samples (float64 math, full precision) */
    samples: Float64Array[];
}

function asciiField(buf: Buffer, offset: number, width: number): string {
    return buf.subarray(offset, offset + width).toString('ascii').trim();
}

export function readEdf(filePath: string): EdfFile {
    const buf = fs.readFileSync(filePath);
    if (buf.length < 256) throw new Error(`${filePath}: too small for an EDF header`);

    const headerBytes = parseInt(asciiField(buf, 184, 8), 10);
    const recordCount = parseInt(asciiField(buf, 236, 8), 10);
    const recordSeconds = parseFloat(asciiField(buf, 244, 8));
    const nSignals = parseInt(asciiField(buf, 252, 4), 10);
    if (!Number.isFinite(nSignals) || nSignals < 1) {
        throw new Error(`${filePath}: bad signal count in EDF header`);
    }
    if (headerBytes !== 256 * (1 + nSignals)) {
        throw new Error(`${filePath}: header length ${headerBytes} != ${256 * (1 + nSignals)}`);
    }

    // signal header fields are grouped: all labels, then all transducers, ...
    const widths = [16, 80, 8, 8, 8, 8, 8, 80, 8, 32];
    const fieldOffsets: number[] = [];
    let cursor = 256;
    for (const w of widths) {
        fieldOffsets.push(cursor);
        cursor += w * nSignals;
    }
    const sigField = (fieldIdx: number, sig: number) =>
        asciiField(buf, fieldOffsets[fieldIdx] + widths[fieldIdx] * sig, widths[fieldIdx]);

    const signals: EdfSignal[] = [];
    for (let s = 0; s < nSignals; s++) {
        signals.push({
            label: sigField(0, s),
            physicalDimension: sigField(2, s),
            physicalMin: parseFloat(sigField(3, s)),
            physicalMax: parseFloat(sigField(4, s)),
            digitalMin: parseInt(sigField(5, s), 10),
            digitalMax: parseInt(sigField(6, s), 10),
            samplesPerRecord: parseInt(sigField(8, s), 10),
        });
    }

    const recordSamples = signals.reduce((acc, s) => acc + s.samplesPerRecord, 0);
    const expected = headerBytes + recordCount * recordSamples * 2;
    if (buf.length < expected) {
        throw new Error(`${filePath}: truncated data records (${buf.length} < ${expected})`);
    }

    const samples = signals.map((s) => new Float64Array(s.samplesPerRecord * recordCount));
    let offset = headerBytes;
    for (let r = 0; r < recordCount; r++) {
        for (let s = 0; s < nSignals; s++) {
            const sig = signals[s];
            const gain = (sig.physicalMax - sig.physicalMin) / (sig.digitalMax - sig.digitalMin);
            const out = samples[s];
            const base = r * sig.samplesPerRecord;
            for (let i = 0; i < sig.samplesPerRecord; i++) {
                const digital = buf.readInt16LE(offset);
                offset += 2;
                out[base + i] = sig.physicalMin + (digital - sig.digitalMin) * gain;
            }
        }
    }
    return { recordCount, recordSeconds, signals, samples };
}

/** Multiplier from an EDF physical dimension to microvolts. */
export function scaleToMicrovolts(physicalDimension: string): number {
    const dim = physicalDimension.trim().toLowerCase();
    switch (dim) {
        case 'uv':
        case 'µv':
            return 1;
        case 'mv':
            return 1e3;
        case 'v':
            return 1e6;
        default:
            throw new Error(`unsupported EDF physical dimension "${physicalDimension}"`);
    }
}
