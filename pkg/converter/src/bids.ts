/**
 * BIDS-style iEEG layout reader.
 *
 * Expects per participant: sub-XX/ieeg/ holding one *_ieeg.edf with its
 * *_ieeg.json sidecar, *_channels.tsv, *_events.tsv and (optionally)
 * *_electrodes.tsv carrying region/hemisphere columns. Best effort:
 * only the pieces the decoding pipeline needs are parsed.
 */
import * as fs from 'fs';
import * as path from 'path';

import { UnsupportedLayout } from './errors.js';
import { readEdf, scaleToMicrovolts } from './edf.js';

export interface BidsEvent {
    onsetSeconds: number;
    trialType: string;
}

export interface BidsRecording {
    participantId: string;
    fs: number;
    channelNames: string[];
    regions: Array<string | null>;
    hemispheres: Array<'left' | 'right' | null>;
    /** per-channel physical samples in microvolts (float64 precision) */
    samples: Float64Array[];
    events: BidsEvent[];
    sourceUnit: string;
    unitScale: number;
}

export function parseTsv(filePath: string): Array<Record<string, string>> {
    const text = fs.readFileSync(filePath, 'utf-8');
    const lines = text.split('\n').filter((l) => l.trim().length > 0);
    if (lines.length === 0) return [];
    const header = lines[0].split('\t');
    return lines.slice(1).map((line) => {
        const cells = line.split('\t');
        const row: Record<string, string> = {};
        header.forEach((name, i) => (row[name] = cells[i] ?? ''));
        return row;
    });
}

function findOne(dir: string, suffix: string, required: boolean): string | null {
    const hits = fs.readdirSync(dir).filter((f) => f.endsWith(suffix)).sort();
    if (hits.length === 0) {
        if (required) throw new UnsupportedLayout(dir, `no *${suffix} found`);
        return null;
    }
    if (hits.length > 1) {
        throw new UnsupportedLayout(dir, `expected one *${suffix}, found ${hits.length}`);
    }
    return path.join(dir, hits[0]);
}

export function listBidsParticipants(root: string): string[] {
    if (!fs.existsSync(root)) throw new UnsupportedLayout(root, 'root does not exist');
    return fs
        .readdirSync(root)
        .filter((name) => name.startsWith('sub-') && fs.statSync(path.join(root, name)).isDirectory())
        .sort();
}

export function readBidsParticipant(root: string, participant: string): BidsRecording {
    const ieegDir = path.join(root, participant, 'ieeg');
    if (!fs.existsSync(ieegDir)) {
        throw new UnsupportedLayout(ieegDir, 'missing ieeg/ directory');
    }
    const edfPath = findOne(ieegDir, '_ieeg.edf', true)!;
    const sidecarPath = findOne(ieegDir, '_ieeg.json', true)!;
    const channelsPath = findOne(ieegDir, '_channels.tsv', true)!;
    const eventsPath = findOne(ieegDir, '_events.tsv', true)!;
    const electrodesPath = findOne(ieegDir, '_electrodes.tsv', false);

    const sidecar = JSON.parse(fs.readFileSync(sidecarPath, 'utf-8'));
    const fsHz = Number(sidecar.SamplingFrequency);
    if (!Number.isFinite(fsHz) || fsHz <= 0) {
        throw new UnsupportedLayout(sidecarPath, 'SamplingFrequency missing or invalid');
    }

    const edf = readEdf(edfPath);
    const edfFs = edf.signals[0].samplesPerRecord / edf.recordSeconds;
    if (Math.abs(edfFs - fsHz) > 1e-6) {
        throw new UnsupportedLayout(edfPath, `EDF rate ${edfFs} != sidecar rate ${fsHz}`);
    }

    const channelRows = parseTsv(channelsPath);
    if (channelRows.length !== edf.signals.length) {
        throw new UnsupportedLayout(
            channelsPath,
            `channels.tsv lists ${channelRows.length} rows for ${edf.signals.length} EDF signals`,
        );
    }
    const channelNames = channelRows.map((r, i) => r.name || edf.signals[i].label);

    const unit = edf.signals[0].physicalDimension;
    const unitScale = scaleToMicrovolts(unit);
    const samples = edf.samples.map((row) => {
        const out = new Float64Array(row.length);
        for (let i = 0; i < row.length; i++) out[i] = row[i] * unitScale;
        return out;
    });

    const regions: Array<string | null> = channelNames.map(() => null);
    const hemispheres: Array<'left' | 'right' | null> = channelNames.map(() => null);
    if (electrodesPath) {
        const byName = new Map(parseTsv(electrodesPath).map((r) => [r.name, r]));
        channelNames.forEach((name, i) => {
            const row = byName.get(name);
            if (!row) return;
            regions[i] = row.region || null;
            const hemi = (row.hemisphere || '').toLowerCase();
            hemispheres[i] = hemi === 'left' || hemi === 'right' ? hemi : null;
        });
    }

    const events = parseTsv(eventsPath).map((r) => ({
        onsetSeconds: Number(r.onset),
        trialType: r.trial_type ?? '',
    }));

    return {
        participantId: participant,
        fs: fsHz,
        channelNames,
        regions,
        hemispheres,
        samples,
        events,
        sourceUnit: unit,
        unitScale,
    };
}
