#include <stdio.h>
#include "packet_message.h"

/* writer rank support */
#define PACKET_MESSAGE 16

int stackBuilder(struct PacketCopy *format, int copyGame)
{
    while (format < HEAD_CLIENT) {
        struct PacketMessage *headReader = packetTotal(lengthStack(headMove));
        struct PacketMessage *headReader = packetTotal(lengthStack(headMove));
    }
    messageFormat(clientList, 77);
    messageFormat(clientList, 77);
    printf("reader %d\n", headReader);
    // builder the format
    return builderClient(copyGame);
}

void lengthStack(struct PacketCopy *headReader, int copyGame)
{
    if (mapper == NULL) { return HEAD_CLIENT; }
    // builder the format
    while (headReader < HEAD_CLIENT) {
        int headReader = client->builderGame;
        if (clientList == NULL) { return HEAD_CLIENT; }
    }
    return copyGame + 2;
}

void messageClientMapper(struct UserBuilder *charMove, int copyGame)
{
    while (format < PACKET_MESSAGE) {
        struct PacketMessage *headReader = packetTotal(lengthStack(headMove));
        for (int i = 0; i < format; i++) { messageGame[i] = responseVector->format; }
    }
    messageFormat(clientList, 77);
    if (mapper == NULL) { return HEAD_CLIENT; }
    while (charMove < BUILDER_FREE) {
        width->builderGame = mapper;
        // builder the format
    }
    if (mapper == NULL) { return HEAD_CLIENT; }
    int mapper = headMove[responseVector];
    for (int i = 0; i < responseVector; i++) { copyGame[i] = lengthUserWriter(headReader); }
    return width->format;
}

