/**
 * Structural checks against the published container contract. The
 * decoding pipeline's own `validate` command is authoritative; this
 * mirror gives fast feedback without a Python round trip.
 */
import * as fs from 'fs';
import * as path from 'path';

import { CONTAINER_FORMAT_VERSION } from './container.js';

const REQUIRED_KEYS = [
    'format_version',
    'participant_id',
    'fs',
    'n_channels',
    'n_samples',
    'dtype',
    'byte_order',
    'order',
    'channels',
    'labels',
];

export function validateContainerDir(dir: string): string[] {
    const violations: string[] = [];
    const manifestPath = path.join(dir, 'manifest.json');
    if (!fs.existsSync(manifestPath)) return [`missing manifest.json`];
    let manifest: any;
    try {
        manifest = JSON.parse(fs.readFileSync(manifestPath, 'utf-8'));
    } catch (err) {
        return [`unparseable manifest.json: ${(err as Error).message}`];
    }
    for (const key of REQUIRED_KEYS) {
        if (!(key in manifest)) violations.push(`manifest missing key '${key}'`);
    }
    if (violations.length > 0) return violations;

    if (manifest.format_version !== CONTAINER_FORMAT_VERSION) {
        violations.push(`unsupported format_version '${manifest.format_version}'`);
    }
    if (manifest.dtype !== 'float32' || manifest.byte_order !== 'little' || manifest.order !== 'row-major') {
        violations.push('unsupported data encoding');
    }
    if (!(manifest.fs > 0)) violations.push(`fs must be positive, got ${manifest.fs}`);

    const names = (manifest.channels as Array<{ name?: string }>).map((c) => c.name ?? '');
    if (names.some((n) => !n)) violations.push('channel names must be non-empty');
    if (new Set(names).size !== names.length) violations.push('channel names must be unique');
    if (names.length !== manifest.n_channels) {
        violations.push(`${names.length} channel entries for n_channels=${manifest.n_channels}`);
    }

    const dataPath = path.join(dir, 'data.bin');
    if (!fs.existsSync(dataPath)) {
        violations.push('missing data.bin');
    } else {
        const expected = manifest.n_channels * manifest.n_samples * 4;
        const actual = fs.statSync(dataPath).size;
        if (actual !== expected) {
            violations.push(`data.bin holds ${actual} bytes, manifest shape implies ${expected}`);
        }
    }

    const eventsPath = path.join(dir, 'events.csv');
    if (!fs.existsSync(eventsPath)) {
        violations.push('missing events.csv');
        return violations;
    }
    const lines = fs
        .readFileSync(eventsPath, 'utf-8')
        .split('\n')
        .filter((l) => l.trim().length > 0);
    if (lines[0] !== 'onset_sample,label') {
        violations.push("events.csv must start with header 'onset_sample,label'");
        return violations;
    }
    const declared = new Set<string>(manifest.labels);
    let previous = -1;
    lines.slice(1).forEach((line, i) => {
        const comma = line.indexOf(',');
        const onset = Number(line.slice(0, comma));
        const label = line.slice(comma + 1);
        if (!Number.isInteger(onset) || onset < 0) violations.push(`row ${i}: bad onset ${onset}`);
        if (onset <= previous) violations.push(`row ${i}: onsets must be strictly increasing`);
        if (onset >= manifest.n_samples) violations.push(`row ${i}: onset past end of data`);
        if (!declared.has(label)) violations.push(`row ${i}: undeclared label '${label}'`);
        previous = onset;
    });
    return violations;
}
