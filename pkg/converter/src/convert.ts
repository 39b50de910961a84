/**
 * Conversion orchestration: source dataset root -> one container per
 * participant. Per-participant failures are isolated so one bad
 * recording never aborts a batch.
 */
import * as fs from 'fs';
import * as path from 'path';

import { listBidsParticipants, readBidsParticipant } from './bids.js';
import { ChannelInfo, ConvertedRecording, writeContainer } from './container.js';
import { UnsupportedLayout } from './errors.js';
import { readNwbParticipant } from './nwb.js';
import { DatasetKind, mapTrialType, sampleRestEvents } from './tasks.js';

export interface SourceDescriptor {
    kind: DatasetKind;
    root: string;
    /** participant selector; default: everything found under root */
    participants?: string[];
    /** ajile12 only: cap rest epochs with a seeded sampler */
    restLimit?: number;
    restSeed?: number;
}

export interface ParticipantOutcome {
    participant: string;
    outDir: string | null;
    error: string | null;
}

function toFloat32(samples: Float64Array[]): Float32Array[] {
    return samples.map((row) => Float32Array.from(row));
}

function bidsToRecording(kind: DatasetKind, root: string, participant: string): ConvertedRecording {
    const src = readBidsParticipant(root, participant);
    const channels: ChannelInfo[] = src.channelNames.map((name, i) => ({
        name,
        region: src.regions[i],
        hemisphere: src.hemispheres[i],
    }));
    const events: Array<[number, string]> = [];
    for (const ev of src.events) {
        const label = mapTrialType(kind, ev.trialType);
        if (label === null || !Number.isFinite(ev.onsetSeconds)) continue;
        events.push([Math.round(ev.onsetSeconds * src.fs), label]);
    }
    return {
        participantId: participant,
        fs: src.fs,
        channels,
        data: toFloat32(src.samples),
        events,
        sourceUnits: { unit: src.sourceUnit, scaleToMicrovolts: src.unitScale },
    };
}

async function nwbToRecording(
    descriptor: SourceDescriptor,
    filePath: string,
    participant: string,
): Promise<ConvertedRecording> {
    const src = await readNwbParticipant(filePath, participant);
    const channels: ChannelInfo[] = src.channelNames.map((name, i) => ({
        name,
        region: src.regions[i],
        hemisphere: src.hemispheres[i],
    }));
    let events: Array<[number, string]> = [];
    for (const trial of src.trials) {
        const label = mapTrialType(descriptor.kind, trial.label);
        if (label === null || !Number.isFinite(trial.startSeconds)) continue;
        events.push([Math.round(trial.startSeconds * src.fs), label]);
    }
    if (descriptor.restLimit !== undefined) {
        events = sampleRestEvents(events, descriptor.restLimit, descriptor.restSeed ?? 0);
    }
    return {
        participantId: participant,
        fs: src.fs,
        channels,
        data: toFloat32(src.samples),
        events,
        sourceUnits: { unit: src.sourceUnit, scaleToMicrovolts: src.unitScale },
    };
}

export function listParticipants(descriptor: SourceDescriptor): string[] {
    if (descriptor.kind === 'ajile12') {
        if (!fs.existsSync(descriptor.root)) {
            throw new UnsupportedLayout(descriptor.root, 'root does not exist');
        }
        return fs
            .readdirSync(descriptor.root)
            .filter((f) => f.endsWith('.nwb'))
            .map((f) => f.replace(/\.nwb$/, ''))
            .sort();
    }
    return listBidsParticipants(descriptor.root);
}

export async function convert(
    descriptor: SourceDescriptor,
    outRoot: string,
): Promise<ParticipantOutcome[]> {
    const participants = descriptor.participants ?? listParticipants(descriptor);
    if (participants.length === 0) {
        throw new UnsupportedLayout(descriptor.root, 'no participants found');
    }
    const outcomes: ParticipantOutcome[] = [];
    for (const participant of participants) {
        const outDir = path.join(outRoot, participant);
        try {
            const recording =
                descriptor.kind === 'ajile12'
                    ? await nwbToRecording(
                          descriptor,
                          path.join(descriptor.root, `${participant}.nwb`),
                          participant,
                      )
                    : bidsToRecording(descriptor.kind, descriptor.root, participant);
            writeContainer(outDir, recording);
            outcomes.push({ participant, outDir, error: null });
        } catch (err) {
            outcomes.push({ participant, outDir: null, error: (err as Error).message });
        }
    }
    return outcomes;
}
